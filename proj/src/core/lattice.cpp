#include "polygrowth/lattice.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace polygrowth {

BitGrid::BitGrid(Rect r) : rect_(r) {
  if (r.empty()) {
    rect_ = Rect{r.x0, r.y0, r.x0, r.y0};
    return;
  }
  stride_ = (static_cast<std::size_t>(r.width()) + 63) / 64;
  words_.assign(stride_ * static_cast<std::size_t>(r.height()), 0);
}

void BitGrid::set(Vec2i c, bool value) {
  if (!rect_.contains(c)) throw std::out_of_range("cell outside grid");
  const std::size_t col = static_cast<std::size_t>(c.x - rect_.x0);
  auto& w = words_[row_base(c.y) + (col >> 6)];
  const std::uint64_t bit = std::uint64_t{1} << (col & 63);
  w = value ? (w | bit) : (w & ~bit);
}

std::size_t BitGrid::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitGrid BitGrid::rehomed(Rect r) const {
  BitGrid out(r);
  for (Vec2i c : cells())
    if (r.contains(c)) out.set(c);
  return out;
}

std::vector<Vec2i> BitGrid::cells() const {
  std::vector<Vec2i> out;
  for (int y = rect_.y0; y < rect_.y1; ++y) {
    const std::size_t base = row_base(y);
    for (std::size_t k = 0; k < stride_; ++k) {
      std::uint64_t w = words_[base + k];
      while (w) {
        const int b = std::countr_zero(w);
        out.push_back({rect_.x0 + static_cast<int>(k * 64) + b, y});
        w &= w - 1;
      }
    }
  }
  return out;
}

bool operator==(const BitGrid& a, const BitGrid& b) {
  if (a.rect_ == b.rect_) return a.words_ == b.words_;
  return a.cells() == b.cells();
}

bool LatticeState::exact_outside() const {
  if (std::holds_alternative<EmptyBackground>(background)) return true;
  if (auto* h = std::get_if<HalfSpace>(&background)) return h->advance.has_value();
  return false;
}

bool LatticeState::occupied(Vec2i c) const {
  if (valid.contains(c)) return grid.get(c);
  if (!exact_outside()) {
    std::ostringstream os;
    os << "state of cell " << c << " is not determined (outside the valid region)";
    throw std::out_of_range(os.str());
  }
  if (auto* h = std::get_if<HalfSpace>(&background)) return h->contains(c);
  return false;
}

LatticeState finite_state(std::span<const Vec2i> cells, int margin) {
  Rect box{0, 0, 1, 1};
  if (!cells.empty()) {
    box = {cells[0].x, cells[0].y, cells[0].x + 1, cells[0].y + 1};
    for (Vec2i c : cells) {
      box.x0 = std::min(box.x0, c.x);
      box.y0 = std::min(box.y0, c.y);
      box.x1 = std::max(box.x1, c.x + 1);
      box.y1 = std::max(box.y1, c.y + 1);
    }
  }
  LatticeState s;
  s.window = s.valid = box.grown(std::max(margin, 0));
  s.grid = BitGrid(s.window);
  for (Vec2i c : cells) s.grid.set(c);
  s.background = EmptyBackground{};
  return s;
}

LatticeState background_state(const Background& bg, Rect window) {
  if (window.empty()) throw std::invalid_argument("background window is empty");
  LatticeState s;
  s.window = s.valid = window;
  s.grid = BitGrid(window);
  s.background = bg;
  for (int y = window.y0; y < window.y1; ++y)
    for (int x = window.x0; x < window.x1; ++x) {
      const Vec2i c{x, y};
      const bool in = std::visit(
          [&](const auto& b) {
            if constexpr (std::is_same_v<std::decay_t<decltype(b)>, EmptyBackground>) return false;
            else return b.contains(c);
          },
          bg);
      if (in) s.grid.set(c);
    }
  return s;
}

bool same_cells(const LatticeState& a, const LatticeState& b) { return a.cells() == b.cells(); }

ProbabilityFn deterministic_probability(const MonotoneRule& rule) {
  if (!rule.is_deterministic()) throw std::invalid_argument("rule is not deterministic");
  if (!rule.mask_capable()) throw std::invalid_argument("simulation needs |N| <= 64");
  return [r = rule](Subset s) { return r.probability(s); };
}

Stepper::Stepper(const Neighborhood& nbhd, ProbabilityFn prob, LatticeState state, StepOptions opts)
    : offsets_(nbhd.offsets().begin(), nbhd.offsets().end()),
      radius_(nbhd.radius()),
      prob_(std::move(prob)),
      state_(std::move(state)),
      opts_(opts) {
  if (offsets_.size() > kMaxMaskSites) throw std::invalid_argument("simulation needs |N| <= 64");
  if (state_.exact_outside()) state_.valid = state_.window;
  if (finite_mode()) {
    bool first = true;
    for (Vec2i c : state_.grid.cells()) {
      if (first) occupied_box_ = {c.x, c.y, c.x + 1, c.y + 1};
      occupied_box_ = {std::min(occupied_box_.x0, c.x), std::min(occupied_box_.y0, c.y),
                       std::max(occupied_box_.x1, c.x + 1), std::max(occupied_box_.y1, c.y + 1)};
      first = false;
    }
    ensure_room();
    rebuild_frontier();
  }
}

void Stepper::ensure_room() {
  if (occupied_box_.empty()) return;
  const Rect need = occupied_box_.grown(radius_ + 1);
  const Rect& w = state_.window;
  if (need.x0 >= w.x0 && need.y0 >= w.y0 && need.x1 <= w.x1 && need.y1 <= w.y1) return;
  const int extra = std::max(16, std::max(need.width(), need.height()) / 4);
  Rect r = need.grown(extra);
  r = {std::min(r.x0, w.x0), std::min(r.y0, w.y0), std::max(r.x1, w.x1), std::max(r.y1, w.y1)};
  regrow(r);
}

void Stepper::regrow(Rect r) {
  state_.grid = state_.grid.rehomed(r);
  state_.window = state_.valid = r;
  if (!frontier_.empty() || in_frontier_.rect().width() > 0) in_frontier_ = in_frontier_.rehomed(r);
  if (tracking_) {
    std::vector<std::int32_t> t(static_cast<std::size_t>(r.width()) * r.height(), -1);
    for (int y = time_rect_.y0; y < time_rect_.y1; ++y)
      for (int x = time_rect_.x0; x < time_rect_.x1; ++x)
        t[static_cast<std::size_t>(y - r.y0) * r.width() + (x - r.x0)] =
            times_[static_cast<std::size_t>(y - time_rect_.y0) * time_rect_.width() + (x - time_rect_.x0)];
    times_ = std::move(t);
    time_rect_ = r;
  }
}

void Stepper::push_frontier_around(Vec2i c) {
  for (Vec2i o : offsets_) {
    const Vec2i d = c - o;
    if (!state_.grid.get(d) && !in_frontier_.get(d)) {
      in_frontier_.set(d);
      frontier_.push_back(d);
    }
  }
}

void Stepper::rebuild_frontier() {
  frontier_.clear();
  in_frontier_ = BitGrid(state_.window);
  for (Vec2i c : state_.grid.cells()) push_frontier_around(c);
}

void Stepper::track_times() {
  tracking_ = true;
  time_rect_ = state_.window;
  times_.assign(static_cast<std::size_t>(time_rect_.width()) * time_rect_.height(), -1);
  for (Vec2i c : state_.cells())
    times_[static_cast<std::size_t>(c.y - time_rect_.y0) * time_rect_.width() + (c.x - time_rect_.x0)] = 0;
}

std::int32_t Stepper::occupation_time(Vec2i c) const {
  if (!tracking_ || !time_rect_.contains(c)) return -1;
  return times_[static_cast<std::size_t>(c.y - time_rect_.y0) * time_rect_.width() + (c.x - time_rect_.x0)];
}

Subset Stepper::pattern(Vec2i c) const {
  Subset s = 0;
  if (finite_mode()) {
    for (std::size_t i = 0; i < offsets_.size(); ++i)
      if (state_.grid.get(c + offsets_[i])) s |= Subset{1} << i;
  } else {
    for (std::size_t i = 0; i < offsets_.size(); ++i)
      if (state_.occupied(c + offsets_[i])) s |= Subset{1} << i;
  }
  return s;
}

bool Stepper::decide(Vec2i c, Subset s) const {
  const double p = prob_(s);
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  if (!opts_.key) throw std::logic_error("random rule stepped without a randomness key");
  return uniform01(*opts_.key, c.x, c.y, state_.time) <= p;
}

void Stepper::evaluate(std::span<const Vec2i> cand, std::vector<char>& out) const {
  out.assign(cand.size(), 0);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = decide(cand[i], pattern(cand[i])) ? 1 : 0;
  };
  const unsigned nt = std::max(1U, opts_.threads);
  if (nt == 1 || cand.size() < 4096) {
    work(0, cand.size());
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (cand.size() + nt - 1) / nt;
  for (unsigned k = 0; k < nt; ++k) {
    const std::size_t lo = k * chunk, hi = std::min(cand.size(), lo + chunk);
    if (lo < hi) pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
}

std::size_t Stepper::step() {
  std::vector<Vec2i> born;
  std::vector<char> verdict;
  if (finite_mode()) {
    ensure_room();
    evaluate(frontier_, verdict);
    std::vector<Vec2i> keep;
    keep.reserve(frontier_.size());
    for (std::size_t i = 0; i < frontier_.size(); ++i) {
      if (verdict[i]) born.push_back(frontier_[i]);
      else keep.push_back(frontier_[i]);
    }
    frontier_ = std::move(keep);
    for (Vec2i c : born) {
      state_.grid.set(c);
      in_frontier_.set(c, false);
      occupied_box_ = occupied_box_.empty()
                          ? Rect{c.x, c.y, c.x + 1, c.y + 1}
                          : Rect{std::min(occupied_box_.x0, c.x), std::min(occupied_box_.y0, c.y),
                                 std::max(occupied_box_.x1, c.x + 1), std::max(occupied_box_.y1, c.y + 1)};
    }
    for (Vec2i c : born) push_frontier_around(c);
  } else {
    const Rect next = state_.exact_outside() ? state_.window : state_.valid.shrunk(radius_);
    if (next.empty())
      throw WindowExhausted("no valid cells remain after step " + std::to_string(state_.time + 1) +
                            "; enlarge the window");
    std::vector<Vec2i> cand;
    for (int y = next.y0; y < next.y1; ++y)
      for (int x = next.x0; x < next.x1; ++x)
        if (!state_.grid.get({x, y})) cand.push_back({x, y});
    evaluate(cand, verdict);
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (verdict[i]) born.push_back(cand[i]);
    for (Vec2i c : born) state_.grid.set(c);
    if (auto* h = std::get_if<HalfSpace>(&state_.background); h && h->advance)
      h->offset += Rational(*h->advance);
    if (next != state_.valid) {
      // drop stale cells so that cells() reports only determined ones
      BitGrid g(state_.window);
      for (Vec2i c : state_.grid.cells())
        if (next.contains(c)) g.set(c);
      state_.grid = std::move(g);
    }
    state_.valid = next;
  }
  ++state_.time;
  if (tracking_) {
    for (Vec2i c : born)
      if (time_rect_.contains(c))
        times_[static_cast<std::size_t>(c.y - time_rect_.y0) * time_rect_.width() + (c.x - time_rect_.x0)] =
            static_cast<std::int32_t>(state_.time);
  }
  return born.size();
}

LatticeState step_deterministic(const MonotoneRule& rule, const LatticeState& state) {
  Stepper s(rule.neighborhood(), deterministic_probability(rule), state);
  s.step();
  return std::move(s).take();
}

LatticeState iterate(const MonotoneRule& rule, const LatticeState& state, std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("step count must be nonnegative");
  if (steps == 0) return state;
  Stepper s(rule.neighborhood(), deterministic_probability(rule), state);
  for (std::int64_t i = 0; i < steps; ++i) s.step();
  return std::move(s).take();
}

void write_rle(std::ostream& os, const LatticeState& s) {
  const Rect& v = s.valid;
  os << "#window " << s.window.x0 << ' ' << s.window.y0 << ' ' << s.window.x1 << ' ' << s.window.y1 << '\n';
  os << "#valid " << v.x0 << ' ' << v.y0 << ' ' << v.x1 << ' ' << v.y1 << '\n';
  os << "#time " << s.time << '\n';
  os << "x = " << v.width() << ", y = " << v.height() << '\n';
  int col = 0;
  auto emit = [&](int n, char ch) {
    if (n <= 0) return;
    std::string tok = (n > 1 ? std::to_string(n) : std::string()) + ch;
    if (col + static_cast<int>(tok.size()) > 70) {
      os << '\n';
      col = 0;
    }
    os << tok;
    col += static_cast<int>(tok.size());
  };
  for (int y = v.y1 - 1; y >= v.y0; --y) {
    int run = 0;
    bool cur = false;
    int last_o = v.x0 - 1;
    for (int x = v.x0; x < v.x1; ++x)
      if (s.grid.get({x, y})) last_o = x;
    for (int x = v.x0; x <= last_o; ++x) {
      const bool b = s.grid.get({x, y});
      if (b != cur && run > 0) {
        emit(run, cur ? 'o' : 'b');
        run = 0;
      }
      cur = b;
      ++run;
    }
    emit(run, cur ? 'o' : 'b');
    emit(1, y == v.y0 ? '!' : '$');
  }
  if (v.empty()) os << '!';
  os << '\n';
}

LatticeState read_rle(std::istream& is) {
  LatticeState s;
  s.background = EmptyBackground{};
  std::string line, body;
  bool have_valid = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line);
      std::string tag;
      ls >> tag;
      if (tag == "#window") ls >> s.window.x0 >> s.window.y0 >> s.window.x1 >> s.window.y1;
      else if (tag == "#valid") {
        ls >> s.valid.x0 >> s.valid.y0 >> s.valid.x1 >> s.valid.y1;
        have_valid = true;
      } else if (tag == "#time") ls >> s.time;
      continue;
    }
    if (line.rfind("x =", 0) == 0) continue;
    body += line;
  }
  if (!have_valid) throw std::invalid_argument("RLE input lacks a #valid line");
  if (s.window.empty()) s.window = s.valid;
  s.grid = BitGrid(s.window);
  int x = s.valid.x0, y = s.valid.y1 - 1, n = 0;
  for (char ch : body) {
    if (ch >= '0' && ch <= '9') {
      n = n * 10 + (ch - '0');
      continue;
    }
    const int run = n > 0 ? n : 1;
    n = 0;
    if (ch == 'b') x += run;
    else if (ch == 'o') {
      for (int k = 0; k < run; ++k) s.grid.set({x++, y});
    } else if (ch == '$') {
      y -= run;
      x = s.valid.x0;
    } else if (ch == '!') break;
    else if (ch != ' ' && ch != '\r' && ch != '\t')
      throw std::invalid_argument(std::string("unexpected RLE character '") + ch + "'");
  }
  return s;
}

}  // namespace polygrowth
