#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tpd/rational.hpp"

namespace tpd {

// An edge {s_i, d_j} of K_{m,n}. Indices are 0-based; everything printed for
// people is 1-based.
struct Edge {
  int supply = 0;
  int demand = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  std::string str() const;  // "(i,j)", 1-based
};

// Subset of the edges of K_{m,n}, stored as a bitmask in row-major order.
// Requires m*n <= 64, which covers every desk-scale instance.
class EdgeSet {
 public:
  static constexpr int kMaxEdges = 64;

  EdgeSet(int m, int n);
  EdgeSet(int m, int n, std::initializer_list<Edge> edges);

  int supplies() const { return m_; }
  int demands() const { return n_; }

  bool contains(const Edge& e) const { return (bits_ >> index(e)) & 1U; }
  void insert(const Edge& e) { bits_ |= std::uint64_t{1} << index(e); }
  void erase(const Edge& e) { bits_ &= ~(std::uint64_t{1} << index(e)); }

  int size() const;
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  /// Edges in row-major order.
  std::vector<Edge> edges() const;
  std::vector<Edge> supply_edges(int i) const;
  std::vector<Edge> demand_edges(int j) const;
  int supply_degree(int i) const;
  int demand_degree(int j) const;

  EdgeSet operator|(const EdgeSet& o) const;
  EdgeSet operator&(const EdgeSet& o) const;
  /// Set difference.
  EdgeSet operator-(const EdgeSet& o) const;
  bool is_subset_of(const EdgeSet& o) const { return (bits_ & ~o.bits_) == 0; }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.bits_ == b.bits_;
  }

  /// 1-based "{(1,1),(1,2)}".
  std::string str() const;

 private:
  int index(const Edge& e) const { return e.supply * n_ + e.demand; }
  void check_same_shape(const EdgeSet& o) const;

  int m_;
  int n_;
  std::uint64_t bits_ = 0;
};

/// Number of independent cycles |E| - |V| + components over all m+n nodes.
int cyclomatic_number(const EdgeSet& edges);
bool is_forest(const EdgeSet& edges);

// Dense m×n matrix of rationals, row-major.
class Matrix {
 public:
  Matrix(int rows, int cols);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i * cols_ + j)];
  }
  const Rational& at(const Edge& e) const { return (*this)(e.supply, e.demand); }
  Rational& at(const Edge& e) { return (*this)(e.supply, e.demand); }

  std::span<const Rational> data() const { return data_; }

  Rational row_sum(int i) const;
  Rational col_sum(int j) const;
  bool is_nonnegative() const;
  bool is_zero() const;
  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::size_t hash() const;
  /// Rows separated by ';', entries by ','.
  std::string str() const;

 private:
  int rows_;
  int cols_;
  std::vector<Rational> data_;
};

/// Parses "a,b,c;d,e,f" into a matrix.
Matrix parse_matrix(std::string_view text);

// Margins (u, v) of an m×n transportation polytope.
class Instance {
 public:
  Instance(std::vector<Rational> u, std::vector<Rational> v);

  int m() const { return static_cast<int>(u_.size()); }
  int n() const { return static_cast<int>(v_.size()); }
  const std::vector<Rational>& u() const { return u_; }
  const std::vector<Rational>& v() const { return v_; }

  /// Row and column sums match the margins and all entries are >= 0.
  bool is_feasible(const Matrix& y) const;
  bool margins_match(const Matrix& y) const;
  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Rational> u_;
  std::vector<Rational> v_;
};

/// {(i,j) : y_ij > 0}.
EdgeSet support_graph(const Matrix& flows);

// A feasible flow together with its (derived) support graph.
class Assignment {
 public:
  /// Throws InvalidArgument unless `flows` is feasible for `inst`.
  Assignment(const Instance& inst, Matrix flows);

  const Matrix& flows() const { return flows_; }
  const Rational& operator()(int i, int j) const { return flows_(i, j); }
  EdgeSet support() const { return support_graph(flows_); }
  bool is_vertex() const { return is_forest(support()); }

  friend bool operator==(const Assignment& a, const Assignment& b) { return a.flows_ == b.flows_; }

 private:
  Matrix flows_;
};

/// |support(O) \ support(F)|.
int edge_distance(const Assignment& from, const Assignment& to);

/// Σ s_ij y_ij.
Rational objective(const Matrix& cost, const Matrix& flows);

// Even simple cycle (s_{i1}, d_{j1}, ..., s_{ik}, d_{jk}) of K_{m,n}, k >= 2.
// Edges {s_{il}, d_{jl}} are increased, edges {d_{jl}, s_{i(l+1)}} decreased.
// The sequence is rotated to start at its smallest supply index, so two
// circuits are equal exactly when their signed incidence vectors are.
class Circuit {
 public:
  Circuit(int m, int n, std::vector<int> supplies, std::vector<int> demands);

  /// Rebuilds the cycle from a signed incidence vector (row-major, entries in {-1,0,1}).
  static Circuit from_signs(int m, int n, std::span<const int> signs);

  int supplies_count() const { return m_; }
  int demands_count() const { return n_; }
  /// Number of supplies on the cycle; the cycle has 2k edges.
  int k() const { return static_cast<int>(supplies_.size()); }
  const std::vector<int>& supply_sequence() const { return supplies_; }
  const std::vector<int>& demand_sequence() const { return demands_; }

  int sign(int i, int j) const { return signs_[static_cast<std::size_t>(i * n_ + j)]; }
  int sign(const Edge& e) const { return sign(e.supply, e.demand); }
  const std::vector<std::int8_t>& signs() const { return signs_; }

  std::vector<Edge> increased_edges() const;
  std::vector<Edge> decreased_edges() const;
  EdgeSet support() const;

  Circuit negated() const;
  /// The orientation whose signed incidence vector is lexicographically smallest.
  Circuit canonical() const;

  /// Dense ±1/0 matrix.
  Matrix as_matrix() const;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.signs_ == b.signs_;
  }
  friend auto operator<=>(const Circuit& a, const Circuit& b) { return a.signs_ <=> b.signs_; }

  /// 1-based "(s1,d3,s2,d1)".
  std::string str() const;

 private:
  int m_;
  int n_;
  std::vector<int> supplies_;
  std::vector<int> demands_;
  std::vector<std::int8_t> signs_;
};

/// Sign compatibility of vectors: no coordinate where one is positive and the other negative.
bool sign_compatible(const Matrix& a, const Matrix& b);

enum class WalkKind { kCD, kCDf, kCDfm, kCDe, kCDs };

std::string_view walk_kind_name(WalkKind kind);
WalkKind parse_walk_kind(std::string_view name);

struct WalkStep {
  Circuit circuit;
  Rational alpha;
};

// Sequence of points y^(0..k) with y^(i+1) = y^(i) + alpha_i g^i.
class Walk {
 public:
  Walk(WalkKind kind, Matrix start);
  /// Takes points and steps as given; validate_walk checks consistency.
  Walk(WalkKind kind, std::vector<Matrix> points, std::vector<WalkStep> steps);

  WalkKind kind() const { return kind_; }
  void set_kind(WalkKind kind) { kind_ = kind; }
  const std::vector<Matrix>& points() const { return points_; }
  const std::vector<WalkStep>& steps() const { return steps_; }
  int length() const { return static_cast<int>(steps_.size()); }
  const Matrix& front() const { return points_.front(); }
  const Matrix& back() const { return points_.back(); }

  /// Appends y + alpha*g.
  void append(const Circuit& g, const Rational& alpha);

  /// Replays the steps from points[0]; true iff every stored point is reproduced.
  bool replays_exactly() const;

  Walk reversed() const;

 private:
  WalkKind kind_;
  std::vector<Matrix> points_;
  std::vector<WalkStep> steps_;
};

}  // namespace tpd

template <>
struct std::hash<tpd::Matrix> {
  std::size_t operator()(const tpd::Matrix& m) const noexcept { return m.hash(); }
};
