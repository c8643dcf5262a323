#include "tpd/instances.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

#include "tpd/circuits.hpp"
#include "tpd/errors.hpp"
#include "tpd/polytope.hpp"

namespace tpd {

namespace {

std::vector<Rational> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

Matrix flows(int m, int n, std::initializer_list<std::tuple<int, int, Rational>> entries) {
  Matrix y(m, n);
  for (const auto& [i, j, f] : entries) y(i, j) = f;
  return y;
}

}  // namespace

GeneratedCase gen_example1() {
  Instance inst(ints({3, 3}), ints({2, 2, 2}));
  Matrix o = flows(2, 3, {{0, 0, 2}, {0, 1, 1}, {1, 1, 1}, {1, 2, 2}});
  Matrix f = flows(2, 3, {{0, 1, 1}, {0, 2, 2}, {1, 0, 2}, {1, 1, 1}});
  GeneratedCase c{"example1", inst, o, f, {Circuit(2, 3, {0, 1}, {1, 0})}, {}, Rational(0)};
  c.expected = {{"edge_distance", 2}, {"graph_distance", 3}, {"cdfm_distance", 1}, {"cd_distance", 1}};
  return c;
}

GeneratedCase gen_coincide(int n) {
  if (n < 2) throw InvalidArgument("gen_coincide needs n >= 2");
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(2));
  v[0] = 2 * n;
  Instance inst({Rational(2 * n - 1), Rational(2 * n - 1)}, v);
  Matrix o(2, n);
  Matrix f(2, n);
  o(0, 0) = 2 * n - 1;
  o(1, 0) = 1;
  f(1, 0) = 2 * n - 1;
  f(0, 0) = 1;
  for (int j = 1; j < n; ++j) {
    o(1, j) = 2;
    f(0, j) = 2;
  }
  GeneratedCase c{"coincide:" + std::to_string(n), inst, o, f, {}, {}, Rational(0)};
  c.expected = {{"edge_distance", n - 1},  {"cdfm_distance", n - 1}, {"graph_distance", n - 1},
                {"graph_diameter", n - 1}, {"critical_edges", 2}};
  return c;
}

GeneratedCase gen_diameter_n(int n) {
  if (n < 3) throw InvalidArgument("gen_diameter_n needs n >= 3");
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(2));
  v[0] = 2 * n - 4;
  Instance inst({Rational(2 * n - 3), Rational(2 * n - 3)}, v);
  Matrix o(2, n);
  Matrix f(2, n);
  o(0, 0) = 2 * n - 4;
  o(0, 1) = 1;
  o(1, 1) = 1;
  f(1, 0) = 2 * n - 4;
  f(0, 1) = 1;
  f(1, 1) = 1;
  for (int j = 2; j < n; ++j) {
    o(1, j) = 2;
    f(0, j) = 2;
  }
  GeneratedCase c{"diameter:" + std::to_string(n), inst, o, f, {}, {}, Rational(0)};
  c.expected = {{"graph_distance", n}};
  return c;
}

std::vector<Circuit> hirsch_sharp_circuits(int m, int n) {
  if (m < 2 || m > n) throw InvalidArgument("the lower-bound construction needs 2 <= m <= n");
  // Each family is (supply sequence, demand sequence); increased edges are
  // (s_l, d_l), decreased ones (s_{l+1}, d_l). Indices here are 1-based.
  struct Family {
    bool enabled;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> members;
  };
  std::vector<Family> families;
  Family a{true, {}};
  for (int j = 2; j <= (n <= 3 ? n : n - 1); ++j) a.members.push_back({{1, 2}, {j, 1}});
  families.push_back(a);
  Family b{true, {}};
  for (int i = 3; i <= m; ++i) b.members.push_back({{1, i}, {2, 1}});
  families.push_back(b);
  families.push_back({m >= 3, {{{1, 3, 2}, {2, 3, 1}}}});
  families.push_back({n >= 4, {{{1, 2}, {2, n}}}});
  families.push_back({m >= 3 && n >= 4, {{{1, 2, 3}, {2, n, 1}}}});

  std::vector<Circuit> out;
  for (const Family& f : families) {
    if (!f.enabled) continue;
    for (const auto& [sup, dem] : f.members) {
      std::vector<int> s;
      std::vector<int> d;
      for (int x : sup) s.push_back(x - 1);
      for (int x : dem) d.push_back(x - 1);
      out.emplace_back(m, n, std::move(s), std::move(d));
    }
  }
  return out;
}

namespace {

int exact_rank(const std::vector<Circuit>& cs) {
  std::vector<std::vector<Rational>> rows;
  for (const Circuit& c : cs) {
    std::vector<Rational> r;
    for (std::int8_t s : c.signs()) r.emplace_back(static_cast<int>(s));
    rows.push_back(std::move(r));
  }
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    auto piv = std::find_if(rows.begin() + rank, rows.end(), [&](const auto& r) { return !r[col].is_zero(); });
    if (piv == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, piv);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      const Rational f = rows[r][col] / p[col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

GeneratedCase gen_hirsch_sharp(int m, int n) {
  const std::vector<Circuit> cs = hirsch_sharp_circuits(m, n);
  const int k = std::min((m - 1) * (n - 1), m + n - 1);
  const std::string name = "hirsch:" + std::to_string(m) + "," + std::to_string(n);
  if (static_cast<int>(cs.size()) != k) {
    throw InternalError(name + ": " + std::to_string(cs.size()) + " circuits assembled, expected " + std::to_string(k));
  }
  if (exact_rank(cs) != k) throw InternalError(name + ": circuits are linearly dependent");
  for (std::size_t a = 0; a < cs.size(); ++a) {
    for (std::size_t b = a + 1; b < cs.size(); ++b) {
      if (!sign_compatible(cs[a].as_matrix(), cs[b].as_matrix())) {
        throw InternalError(name + ": circuits " + cs[a].str() + " and " + cs[b].str() + " are not sign-compatible");
      }
    }
  }
  Matrix o(m, n);
  Matrix f(m, n);
  for (const Circuit& c : cs) {
    for (const Edge& e : c.decreased_edges()) o.at(e) += 1;
    for (const Edge& e : c.increased_edges()) f.at(e) += 1;
  }
  if (!is_forest(support_graph(o))) throw InternalError(name + ": decreased edges contain a cycle");
  if (!is_forest(support_graph(f))) throw InternalError(name + ": increased edges contain a cycle");
  std::vector<Rational> u;
  std::vector<Rational> v;
  for (int i = 0; i < m; ++i) u.push_back(o.row_sum(i));
  for (int j = 0; j < n; ++j) v.push_back(o.col_sum(j));
  GeneratedCase c{name, Instance(u, v), o, f, cs, {}, Rational(0)};
  if (!c.instance.is_feasible(f)) throw InternalError(name + ": increased edges do not meet the margins");
  c.expected = {{"circuits", k}, {"cd_distance", k}};
  return c;
}

GeneratedCase perturb(const GeneratedCase& base, const Rational& eps) {
  if (eps.sign() < 0) throw InvalidArgument("perturbation must be non-negative");
  if (eps.is_zero()) return base;
  std::vector<Rational> u = base.instance.u();
  std::vector<Rational> v = base.instance.v();
  Rational step = eps;
  for (const Circuit& c : base.circuits) {
    for (int s : c.supply_sequence()) u[static_cast<std::size_t>(s)] += step;
    for (int d : c.demand_sequence()) v[static_cast<std::size_t>(d)] += step;
    step *= eps;
  }
  GeneratedCase out = base;
  out.instance = Instance(u, v);
  out.eps = eps;
  out.name = base.name + "@" + eps.str();
  for (Matrix* y : {&out.from, &out.to}) {
    const EdgeSet support = support_graph(*y);
    auto solved = solve_on_support(out.instance, support);
    if (!solved || support_graph(*solved) != support || !solved->is_nonnegative()) {
      throw InvalidArgument("perturbation " + eps.str() + " is too large: a support flow is no longer positive");
    }
    *y = *solved;
  }
  return out;
}

GeneratedCase perturb_certified(const GeneratedCase& base, Rational eps, int max_halvings,
                                std::uint64_t max_solves) {
  const auto k_it = base.expected.find("cd_distance");
  if (k_it == base.expected.end()) throw InvalidArgument("case carries no circuit-distance claim to certify");
  const int k = k_it->second;
  const auto circuits = enumerate_circuits(base.instance.m(), base.instance.n());
  for (int attempt = 0; attempt <= max_halvings; ++attempt, eps /= 2) {
    std::optional<GeneratedCase> c;
    try {
      c = perturb(base, eps);
    } catch (const InvalidArgument&) {
      continue;
    }
    if (!cd_at_most(c->from, c->to, k - 1, circuits, max_solves)) return *c;
  }
  throw ResourceLimitError("no perturbation down to " + eps.str() + " removed the shortcut");
}

GeneratedCase generate(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::vector<int> args;
  if (colon != std::string::npos) {
    std::size_t p = colon + 1;
    while (p <= text.size()) {
      const auto q = std::min(text.find(',', p), text.size());
      const std::string tok = text.substr(p, q - p);
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
        throw InvalidArgument("bad generator argument in \"" + text + "\"");
      }
      args.push_back(std::stoi(tok));
      p = q + 1;
    }
  }
  const auto want = [&](std::size_t count) {
    if (args.size() != count) {
      throw InvalidArgument("generator \"" + name + "\" takes " + std::to_string(count) + " argument(s)");
    }
  };
  if (name == "example1") {
    want(0);
    return gen_example1();
  }
  if (name == "coincide") {
    want(1);
    return gen_coincide(args[0]);
  }
  if (name == "diameter") {
    want(1);
    return gen_diameter_n(args[0]);
  }
  if (name == "hirsch") {
    want(2);
    return gen_hirsch_sharp(args[0], args[1]);
  }
  throw InvalidArgument("unknown generator \"" + name + "\" (example1, coincide:N, diameter:N, hirsch:M,N)");
}

Instance random_instance(int m, int n, std::mt19937_64& rng, int lo, int hi) {
  if (m < 2 || n < 2 || lo < 1 || lo > hi) throw InvalidArgument("bad random instance parameters");
  std::uniform_int_distribution<int> dist(lo, hi);
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    std::vector<int> u(static_cast<std::size_t>(m));
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int& x : u) x = dist(rng);
    for (int j = 0; j + 1 < n; ++j) v[static_cast<std::size_t>(j)] = dist(rng);
    const int last = std::accumulate(u.begin(), u.end(), 0) - std::accumulate(v.begin(), v.end() - 1, 0);
    if (last < lo || last > hi) continue;
    v.back() = last;
    Instance inst(std::vector<Rational>(u.begin(), u.end()), std::vector<Rational>(v.begin(), v.end()));
    if (is_nondegenerate(inst)) return inst;
  }
  throw ResourceLimitError("no non-degenerate margins found");
}

Matrix random_cost(int m, int n, std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  Matrix s(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) s(i, j) = dist(rng);
  }
  return s;
}

}  // namespace tpd
