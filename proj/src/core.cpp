#include "tpd/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>

#include "tpd/errors.hpp"

namespace tpd {

std::string Edge::str() const {
  return "(" + std::to_string(supply + 1) + "," + std::to_string(demand + 1) + ")";
}

// ---------------------------------------------------------------------------
// EdgeSet

EdgeSet::EdgeSet(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1 || m * n > kMaxEdges) {
    throw InvalidArgument("edge sets support 1 <= m*n <= 64, got " + std::to_string(m) + "x" +
                          std::to_string(n));
  }
}

EdgeSet::EdgeSet(int m, int n, std::initializer_list<Edge> edges) : EdgeSet(m, n) {
  for (const Edge& e : edges) {
    insert(e);
  }
}

int EdgeSet::size() const { return std::popcount(bits_); }

std::vector<Edge> EdgeSet::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    const int idx = std::countr_zero(b);
    out.push_back({idx / n_, idx % n_});
  }
  return out;
}

std::vector<Edge> EdgeSet::supply_edges(int i) const {
  std::vector<Edge> out;
  for (int j = 0; j < n_; ++j) {
    if (contains({i, j})) out.push_back({i, j});
  }
  return out;
}

std::vector<Edge> EdgeSet::demand_edges(int j) const {
  std::vector<Edge> out;
  for (int i = 0; i < m_; ++i) {
    if (contains({i, j})) out.push_back({i, j});
  }
  return out;
}

int EdgeSet::supply_degree(int i) const {
  const std::uint64_t row = ((n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1))
                            << (i * n_);
  return std::popcount(bits_ & row);
}

int EdgeSet::demand_degree(int j) const {
  int d = 0;
  for (int i = 0; i < m_; ++i) d += contains({i, j}) ? 1 : 0;
  return d;
}

void EdgeSet::check_same_shape(const EdgeSet& o) const {
  if (m_ != o.m_ || n_ != o.n_) {
    throw InvalidArgument("edge sets of different shapes");
  }
}

EdgeSet EdgeSet::operator|(const EdgeSet& o) const {
  check_same_shape(o);
  EdgeSet r(*this);
  r.bits_ |= o.bits_;
  return r;
}

EdgeSet EdgeSet::operator&(const EdgeSet& o) const {
  check_same_shape(o);
  EdgeSet r(*this);
  r.bits_ &= o.bits_;
  return r;
}

EdgeSet EdgeSet::operator-(const EdgeSet& o) const {
  check_same_shape(o);
  EdgeSet r(*this);
  r.bits_ &= ~o.bits_;
  return r;
}

std::string EdgeSet::str() const {
  std::string s = "{";
  bool first = true;
  for (const Edge& e : edges()) {
    if (!first) s += ",";
    s += e.str();
    first = false;
  }
  return s + "}";
}

int cyclomatic_number(const EdgeSet& edges) {
  // Union-find over at most 64+1 nodes, without allocation.
  const int m = edges.supplies();
  const int n = edges.demands();
  std::array<int, 2 * EdgeSet::kMaxEdges + 2> parent{};
  for (int x = 0; x < m + n; ++x) parent[static_cast<std::size_t>(x)] = x;
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  int cycles = 0;
  for (std::uint64_t b = edges.bits(); b != 0; b &= b - 1) {
    const int idx = std::countr_zero(b);
    const int a = find(idx / n);
    const int c = find(m + idx % n);
    if (a == c) {
      ++cycles;
    } else {
      parent[static_cast<std::size_t>(a)] = c;
    }
  }
  return cycles;
}

bool is_forest(const EdgeSet& edges) { return cyclomatic_number(edges) == 0; }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix out(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < out.rows(); ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != out.cols()) {
      throw InvalidArgument("ragged matrix rows");
    }
    for (int j = 0; j < out.cols(); ++j) {
      out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Rational Matrix::row_sum(int i) const {
  Rational s;
  for (int j = 0; j < cols_; ++j) s += (*this)(i, j);
  return s;
}

Rational Matrix::col_sum(int j) const {
  Rational s;
  for (int i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

bool Matrix::is_nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.sign() >= 0; });
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (!same_shape(o)) throw InvalidArgument("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (!same_shape(o)) throw InvalidArgument("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

std::size_t Matrix::hash() const {
  std::size_t h = static_cast<std::size_t>(rows_ * 131 + cols_);
  for (const Rational& r : data_) {
    h ^= r.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Matrix::str() const {
  std::string s;
  for (int i = 0; i < rows_; ++i) {
    if (i > 0) s += ";";
    for (int j = 0; j < cols_; ++j) {
      if (j > 0) s += ",";
      s += (*this)(i, j).str();
    }
  }
  return s;
}

Matrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const std::string_view row = text.substr(start, end - start);
    std::vector<Rational> entries;
    std::size_t p = 0;
    while (p <= row.size()) {
      const auto q = std::min(row.find(',', p), row.size());
      entries.push_back(Rational::parse(row.substr(p, q - p)));
      p = q + 1;
    }
    rows.push_back(std::move(entries));
    start = end + 1;
  }
  return Matrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// Instance / Assignment

Instance::Instance(std::vector<Rational> u, std::vector<Rational> v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() < 2 || v_.size() < 2) {
    throw InvalidArgument("instances need at least two supplies and two demands");
  }
  const auto positive = [](const Rational& r) { return r.sign() > 0; };
  if (!std::all_of(u_.begin(), u_.end(), positive) || !std::all_of(v_.begin(), v_.end(), positive)) {
    throw InvalidArgument("margins must be strictly positive");
  }
  const Rational su = std::accumulate(u_.begin(), u_.end(), Rational{});
  const Rational sv = std::accumulate(v_.begin(), v_.end(), Rational{});
  if (su != sv) {
    throw InvalidArgument("total supply " + su.str() + " differs from total demand " + sv.str());
  }
}

bool Instance::margins_match(const Matrix& y) const {
  if (y.rows() != m() || y.cols() != n()) return false;
  for (int i = 0; i < m(); ++i) {
    if (y.row_sum(i) != u_[static_cast<std::size_t>(i)]) return false;
  }
  for (int j = 0; j < n(); ++j) {
    if (y.col_sum(j) != v_[static_cast<std::size_t>(j)]) return false;
  }
  return true;
}

bool Instance::is_feasible(const Matrix& y) const { return margins_match(y) && y.is_nonnegative(); }

EdgeSet support_graph(const Matrix& flows) {
  EdgeSet s(flows.rows(), flows.cols());
  for (int i = 0; i < flows.rows(); ++i) {
    for (int j = 0; j < flows.cols(); ++j) {
      if (flows(i, j).sign() > 0) s.insert({i, j});
    }
  }
  return s;
}

Assignment::Assignment(const Instance& inst, Matrix flows) : flows_(std::move(flows)) {
  if (!inst.is_feasible(flows_)) {
    throw InvalidArgument("flows [" + flows_.str() + "] are not feasible for the margins");
  }
}

int edge_distance(const Assignment& from, const Assignment& to) {
  return (from.support() - to.support()).size();
}

Rational objective(const Matrix& cost, const Matrix& flows) {
  if (!cost.same_shape(flows)) throw InvalidArgument("cost and flow shapes differ");
  Rational total;
  for (std::size_t k = 0; k < flows.data().size(); ++k) {
    if (!cost.data()[k].is_zero()) total += cost.data()[k] * flows.data()[k];
  }
  return total;
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int m, int n, std::vector<int> supplies, std::vector<int> demands)
    : m_(m), n_(n), supplies_(std::move(supplies)), demands_(std::move(demands)),
      signs_(static_cast<std::size_t>(m * n), 0) {
  const std::size_t k = supplies_.size();
  if (k < 2 || demands_.size() != k) {
    throw InvalidArgument("a circuit needs k >= 2 supplies and k demands");
  }
  std::vector<bool> seen_s(static_cast<std::size_t>(m), false);
  std::vector<bool> seen_d(static_cast<std::size_t>(n), false);
  for (std::size_t l = 0; l < k; ++l) {
    const int s = supplies_[l];
    const int d = demands_[l];
    if (s < 0 || s >= m || d < 0 || d >= n) throw InvalidArgument("circuit node out of range");
    if (seen_s[static_cast<std::size_t>(s)] || seen_d[static_cast<std::size_t>(d)]) {
      throw InvalidArgument("circuit nodes must be pairwise distinct");
    }
    seen_s[static_cast<std::size_t>(s)] = true;
    seen_d[static_cast<std::size_t>(d)] = true;
  }
  const auto first = std::min_element(supplies_.begin(), supplies_.end()) - supplies_.begin();
  std::rotate(supplies_.begin(), supplies_.begin() + first, supplies_.end());
  std::rotate(demands_.begin(), demands_.begin() + first, demands_.end());
  for (std::size_t l = 0; l < k; ++l) {
    signs_[static_cast<std::size_t>(supplies_[l] * n + demands_[l])] = 1;
    signs_[static_cast<std::size_t>(supplies_[(l + 1) % k] * n + demands_[l])] = -1;
  }
}

Circuit Circuit::from_signs(int m, int n, std::span<const int> signs) {
  if (static_cast<int>(signs.size()) != m * n) throw InvalidArgument("sign vector has wrong size");
  const auto at = [&](int i, int j) { return signs[static_cast<std::size_t>(i * n + j)]; };
  int start = -1;
  int nonzero = 0;
  for (int i = 0; i < m; ++i) {
    int plus = 0;
    int minus = 0;
    for (int j = 0; j < n; ++j) {
      const int s = at(i, j);
      if (s < -1 || s > 1) throw InvalidArgument("circuit signs must be -1, 0 or 1");
      plus += s == 1;
      minus += s == -1;
      nonzero += s != 0;
    }
    if (plus != minus || plus > 1) throw InvalidArgument("signs do not form an alternating cycle");
    if (plus == 1 && start < 0) start = i;
  }
  for (int j = 0; j < n; ++j) {
    int plus = 0;
    int minus = 0;
    for (int i = 0; i < m; ++i) {
      plus += at(i, j) == 1;
      minus += at(i, j) == -1;
    }
    if (plus != minus || plus > 1) throw InvalidArgument("signs do not form an alternating cycle");
  }
  if (start < 0) throw InvalidArgument("empty circuit");
  std::vector<int> supplies;
  std::vector<int> demands;
  int s = start;
  do {
    int d = 0;
    while (at(s, d) != 1) ++d;
    supplies.push_back(s);
    demands.push_back(d);
    int next = 0;
    while (at(next, d) != -1) ++next;
    s = next;
  } while (s != start && supplies.size() <= static_cast<std::size_t>(m));
  if (static_cast<int>(2 * supplies.size()) != nonzero) {
    throw InvalidArgument("signs describe more than one cycle");
  }
  return Circuit(m, n, std::move(supplies), std::move(demands));
}

std::vector<Edge> Circuit::increased_edges() const {
  std::vector<Edge> out;
  for (std::size_t l = 0; l < supplies_.size(); ++l) out.push_back({supplies_[l], demands_[l]});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> Circuit::decreased_edges() const {
  std::vector<Edge> out;
  const std::size_t k = supplies_.size();
  for (std::size_t l = 0; l < k; ++l) out.push_back({supplies_[(l + 1) % k], demands_[l]});
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet Circuit::support() const {
  EdgeSet s(m_, n_);
  for (std::size_t idx = 0; idx < signs_.size(); ++idx) {
    if (signs_[idx] != 0) s.insert({static_cast<int>(idx) / n_, static_cast<int>(idx) % n_});
  }
  return s;
}

Circuit Circuit::negated() const {
  const std::size_t k = supplies_.size();
  std::vector<int> s(k);
  std::vector<int> d(k);
  s[0] = supplies_[0];
  for (std::size_t l = 1; l < k; ++l) s[l] = supplies_[k - l];
  for (std::size_t l = 0; l < k; ++l) d[l] = demands_[k - 1 - l];
  return Circuit(m_, n_, std::move(s), std::move(d));
}

Circuit Circuit::canonical() const {
  Circuit neg = negated();
  return neg.signs_ < signs_ ? neg : *this;
}

Matrix Circuit::as_matrix() const {
  Matrix g(m_, n_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) g(i, j) = sign(i, j);
  }
  return g;
}

std::string Circuit::str() const {
  std::string s = "(";
  for (std::size_t l = 0; l < supplies_.size(); ++l) {
    if (l > 0) s += ",";
    s += "s" + std::to_string(supplies_[l] + 1) + ",d" + std::to_string(demands_[l] + 1);
  }
  return s + ")";
}

bool sign_compatible(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    if (a.data()[k].sign() * b.data()[k].sign() < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Walk

std::string_view walk_kind_name(WalkKind kind) {
  switch (kind) {
    case WalkKind::kCD: return "CD";
    case WalkKind::kCDf: return "CD_f";
    case WalkKind::kCDfm: return "CD_fm";
    case WalkKind::kCDe: return "CD_e";
    case WalkKind::kCDs: return "CD_s";
  }
  return "?";
}

WalkKind parse_walk_kind(std::string_view name) {
  for (WalkKind k : {WalkKind::kCD, WalkKind::kCDf, WalkKind::kCDfm, WalkKind::kCDe, WalkKind::kCDs}) {
    if (walk_kind_name(k) == name) return k;
  }
  throw InvalidArgument("unknown walk kind \"" + std::string(name) + "\"");
}

Walk::Walk(WalkKind kind, Matrix start) : kind_(kind) { points_.push_back(std::move(start)); }

Walk::Walk(WalkKind kind, std::vector<Matrix> points, std::vector<WalkStep> steps)
    : kind_(kind), points_(std::move(points)), steps_(std::move(steps)) {
  if (points_.empty()) throw InvalidArgument("a walk needs at least one point");
}

void Walk::append(const Circuit& g, const Rational& alpha) {
  Matrix next = points_.back();
  for (int i = 0; i < next.rows(); ++i) {
    for (int j = 0; j < next.cols(); ++j) {
      const int s = g.sign(i, j);
      if (s > 0) next(i, j) += alpha;
      if (s < 0) next(i, j) -= alpha;
    }
  }
  steps_.push_back({g, alpha});
  points_.push_back(std::move(next));
}

bool Walk::replays_exactly() const {
  if (points_.size() != steps_.size() + 1) return false;
  Walk replay(kind_, points_.front());
  for (const WalkStep& s : steps_) replay.append(s.circuit, s.alpha);
  return replay.points_ == points_;
}

Walk Walk::reversed() const {
  std::vector<Matrix> pts(points_.rbegin(), points_.rend());
  std::vector<WalkStep> steps;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    steps.push_back({it->circuit.negated(), it->alpha});
  }
  return Walk(kind_, std::move(pts), std::move(steps));
}

}  // namespace tpd
