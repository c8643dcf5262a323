#include "tpd/io.hpp"

#include <fstream>
#include <sstream>

#include "tpd/errors.hpp"

namespace tpd {

namespace {

std::vector<Rational> rationals_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw InvalidArgument(std::string("\"") + field + "\" must be an array");
  std::vector<Rational> out;
  for (const Json& x : j) {
    if (x.is_string()) {
      out.push_back(Rational::parse(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      out.emplace_back(x.get<long>());
    } else {
      throw InvalidArgument(std::string("entries of \"") + field + "\" must be \"p/q\" strings");
    }
  }
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidArgument(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const Instance& inst) {
  Json u = Json::array();
  Json v = Json::array();
  for (const Rational& r : inst.u()) u.push_back(r.str());
  for (const Rational& r : inst.v()) v.push_back(r.str());
  return Json{{"m", inst.m()}, {"n", inst.n()}, {"u", u}, {"v", v}};
}

Instance instance_from_json(const Json& j) {
  Instance inst(rationals_from_json(field(j, "u"), "u"), rationals_from_json(field(j, "v"), "v"));
  if (j.contains("m") && j.at("m").get<int>() != inst.m()) throw InvalidArgument("\"m\" does not match \"u\"");
  if (j.contains("n") && j.at("n").get<int>() != inst.n()) throw InvalidArgument("\"n\" does not match \"v\"");
  return inst;
}

Json to_json(const Matrix& y) {
  Json rows = Json::array();
  for (int i = 0; i < y.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < y.cols(); ++j) row.push_back(y(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("a matrix must be an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const Json& r : j) rows.push_back(rationals_from_json(r, "row"));
  return Matrix::from_rows(rows);
}

Json to_json(const Circuit& c) {
  Json out = Json::array();
  for (int i = 0; i < c.supplies_count(); ++i) {
    for (int j = 0; j < c.demands_count(); ++j) {
      if (c.sign(i, j) != 0) out.push_back(Json::array({i + 1, j + 1, c.sign(i, j)}));
    }
  }
  return out;
}

Circuit circuit_from_json(const Json& j, int m, int n) {
  if (!j.is_array()) throw InvalidArgument("a circuit must be an array of [i, j, sign]");
  std::vector<int> signs(static_cast<std::size_t>(m * n), 0);
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 3) throw InvalidArgument("circuit entries are [i, j, sign]");
    const int i = e[0].get<int>() - 1;
    const int d = e[1].get<int>() - 1;
    if (i < 0 || i >= m || d < 0 || d >= n) throw InvalidArgument("circuit entry out of range");
    signs[static_cast<std::size_t>(i * n + d)] = e[2].get<int>();
  }
  return Circuit::from_signs(m, n, signs);
}

Json to_json(const Walk& w) {
  Json points = Json::array();
  for (const Matrix& p : w.points()) points.push_back(to_json(p));
  Json steps = Json::array();
  for (const WalkStep& s : w.steps()) steps.push_back(Json{{"circuit", to_json(s.circuit)}, {"alpha", s.alpha.str()}});
  return Json{{"kind", std::string(walk_kind_name(w.kind()))}, {"points", points}, {"steps", steps}};
}

Walk walk_from_json(const Json& j) {
  const WalkKind kind = parse_walk_kind(field(j, "kind").get<std::string>());
  std::vector<Matrix> points;
  for (const Json& p : field(j, "points")) points.push_back(matrix_from_json(p));
  if (points.empty()) throw InvalidArgument("a walk needs at least one point");
  const int m = points.front().rows();
  const int n = points.front().cols();
  std::vector<WalkStep> steps;
  for (const Json& s : field(j, "steps")) {
    steps.push_back({circuit_from_json(field(s, "circuit"), m, n), Rational::parse(field(s, "alpha").get<std::string>())});
  }
  return Walk(kind, std::move(points), std::move(steps));
}

Json to_json(const GeneratedCase& c) {
  Json expected = Json::object();
  for (const auto& [k, v] : c.expected) expected[k] = v;
  Json circuits = Json::array();
  for (const Circuit& g : c.circuits) circuits.push_back(to_json(g));
  Json out = to_json(c.instance);
  out["name"] = c.name;
  out["eps"] = c.eps.str();
  out["from"] = to_json(c.from);
  out["to"] = to_json(c.to);
  out["circuits"] = circuits;
  out["expected"] = expected;
  return out;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

Json Table::to_json() const {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) obj[header[i]] = r[i];
    out.push_back(obj);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << content;
}

}  // namespace tpd
