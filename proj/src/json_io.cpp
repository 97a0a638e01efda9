#include "qlogic/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <vector>

#include "qlogic/errors.hpp"

namespace qlogic {

namespace {

double num_from_json(const Json& j, const char* what) {
  if (!j.is_number()) throw BadInput(std::string(what) + " must be a number");
  return j.get<double>();
}

Cplx entry_from_json(const Json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cplx(j[0].get<double>(), j[1].get<double>());
  throw BadInput("matrix entry must be a number or an [re, im] pair");
}

Json entry_to_json(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw BadInput("cannot parse JSON in " + path + ": " + e.what());
  }
  return j;
}

Json matrix_to_json(const Mat& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(entry_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["dim"] = a.rows();
  out["rows"] = std::move(rows);
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows"))
    throw BadInput("matrix JSON must be an object with a \"rows\" array");
  const Json& rows = j["rows"];
  if (!rows.is_array() || rows.empty()) throw BadInput("matrix \"rows\" must be non-empty");
  int n = static_cast<int>(rows.size());
  if (j.contains("dim") && j["dim"].get<int>() != n)
    throw BadInput("matrix \"dim\" disagrees with the row count");
  Mat a(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw BadInput("matrix rows must be square");
    for (int c = 0; c < n; ++c) a(i, c) = entry_from_json(row[static_cast<size_t>(c)]);
  }
  return a;
}

BorelSet parse_borel(const std::string& literal) {
  std::string s;
  for (char ch : literal)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw BadInput("empty interval literal");
  if (s == "empty") return BorelSet::empty();
  if (s == "R") return BorelSet::real_line();

  BorelSet out = BorelSet::empty();
  size_t pos = 0;
  auto parse_number = [&](bool closing) {
    size_t end = pos;
    while (end < s.size() && s[end] != ',' && s[end] != ')' && s[end] != ']') ++end;
    std::string tok = s.substr(pos, end - pos);
    pos = end;
    if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    char* stop = nullptr;
    double x = std::strtod(tok.c_str(), &stop);
    if (tok.empty() || stop != tok.c_str() + tok.size())
      throw BadInput("bad " + std::string(closing ? "upper" : "lower") +
                     " endpoint in interval literal: \"" + tok + "\"");
    return x;
  };
  while (pos < s.size()) {
    char open = s[pos];
    if (open != '(' && open != '[')
      throw BadInput("interval must start with '(' or '[' at position " + std::to_string(pos));
    ++pos;
    double lo = parse_number(false);
    if (pos >= s.size() || s[pos] != ',') throw BadInput("expected ',' in interval literal");
    ++pos;
    double hi = parse_number(true);
    if (pos >= s.size() || (s[pos] != ')' && s[pos] != ']'))
      throw BadInput("interval must end with ')' or ']'");
    char close = s[pos];
    ++pos;
    out = out.unite(BorelSet::interval(lo, hi, open == '[', close == ']'));
    if (pos < s.size()) {
      if (s[pos] != 'u' && s[pos] != 'U') throw BadInput("expected 'u' between intervals");
      ++pos;
    }
  }
  return normalize(out);
}

std::string format_borel(const BorelSet& s) {
  BorelSet n = normalize(s);
  if (n.pieces.empty()) return "empty";
  std::string out;
  for (size_t i = 0; i < n.pieces.size(); ++i) {
    const Interval& p = n.pieces[i];
    if (i) out += " u ";
    out += p.lo_closed ? '[' : '(';
    out += format_double(p.lo);
    out += ',';
    out += format_double(p.hi);
    out += p.hi_closed ? ']' : ')';
  }
  return out;
}

BorelSet borel_from_json(const Json& j) {
  if (j.is_string()) return parse_borel(j.get<std::string>());
  if (j.is_object() && j.contains("pieces")) {
    BorelSet out = BorelSet::empty();
    for (const Json& p : j["pieces"]) {
      out = out.unite(BorelSet::interval(
          num_from_json(p.at("lo"), "piece lo"), num_from_json(p.at("hi"), "piece hi"),
          p.value("lo_closed", false), p.value("hi_closed", false)));
    }
    return normalize(out);
  }
  throw BadInput("interval set must be a literal string or {\"pieces\": [...]}");
}

Json borel_to_json(const BorelSet& s) { return format_borel(s); }

State state_from_json(const Json& j) {
  if (j.is_object() && j.contains("pure")) {
    std::vector<Cplx> amps;
    for (const Json& a : j["pure"]) amps.push_back(entry_from_json(a));
    return pure_state(amps);
  }
  return make_state(matrix_from_json(j));
}

Json state_to_json(const State& s) { return matrix_to_json(s.rho); }

Context context_from_json(const Json& j) {
  if (!j.is_object()) throw BadInput("context JSON must be an object");
  std::string label = j.value("label", "");
  if (j.contains("atoms")) {
    std::vector<Mat> atoms;
    for (const Json& a : j["atoms"]) atoms.push_back(matrix_from_json(a));
    return make_context(std::move(atoms), label);
  }
  if (j.contains("ops")) {
    std::vector<Mat> ops;
    for (const Json& a : j["ops"]) ops.push_back(matrix_from_json(a));
    return context_from_commuting(ops, label);
  }
  throw BadInput("context JSON needs \"atoms\" or \"ops\"");
}

Json context_to_json(const Context& c) {
  Json out;
  out["label"] = c.label;
  Json atoms = Json::array();
  for (const Mat& q : c.atoms) atoms.push_back(matrix_to_json(q));
  out["atoms"] = std::move(atoms);
  return out;
}

ContextPoset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators"))
    throw BadInput("poset JSON must be an object with \"generators\"");
  std::vector<Context> gens;
  for (const auto& [label, ops_json] : j["generators"].items()) {
    std::vector<Mat> ops;
    for (const Json& a : ops_json) ops.push_back(matrix_from_json(a));
    gens.push_back(context_from_commuting(ops, label));
  }
  return build_poset(std::move(gens), j.value("down_close", true),
                     j.value("include_bottom", true), j.value("cap", 5000));
}

Json poset_to_json(const ContextPoset& p) {
  Json contexts = Json::array();
  for (int c = 0; c < p.size(); ++c) {
    Json jc;
    jc["label"] = p.at(c).label;
    jc["natoms"] = p.at(c).natoms();
    Json atoms = Json::array();
    for (const Mat& q : p.at(c).atoms) atoms.push_back(matrix_to_json(q));
    jc["atoms"] = std::move(atoms);
    contexts.push_back(std::move(jc));
  }
  Json order = Json::array();
  for (int c = 0; c < p.size(); ++c)
    for (int d = 0; d < p.size(); ++d)
      if (d != c && p.leq(d, c)) order.push_back(Json::array({p.at(d).label, p.at(c).label}));
  Json out;
  out["contexts"] = std::move(contexts);
  out["order"] = std::move(order);
  out["bottom_included"] = p.bottom_included;
  out["down_closed"] = p.is_down_closed();
  return out;
}

Subobject subobject_from_json(const Json& j, std::shared_ptr<const ContextPoset> p) {
  if (!j.is_object() || !j.contains("variant") || !j.contains("family"))
    throw BadInput("subobject JSON needs \"variant\" and \"family\"");
  Subobject s;
  s.variant = variant_from_string(j["variant"].get<std::string>());
  s.poset = std::move(p);
  s.family.resize(static_cast<size_t>(s.P().size()));
  for (const auto& [label, idxs] : j["family"].items()) {
    int c = s.P().find_label(label);
    if (c < 0) throw BadInput("family stage \"" + label + "\" is not in the poset");
    std::vector<int> v;
    for (const Json& i : idxs) {
      int idx = i.get<int>();
      if (idx < 0 || idx >= s.P().at(c).natoms())
        throw BadInput("atom index out of range at stage \"" + label + "\"");
      v.push_back(idx);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    s.family[static_cast<size_t>(c)] = std::move(v);
  }
  if (!validate_subobject(s)) throw BadInput("subobject family violates its closure rule");
  return s;
}

Json subobject_to_json(const Subobject& s) {
  Json out;
  out["variant"] = variant_name(s.variant);
  Json family;
  for (int c = 0; c < s.P().size(); ++c)
    family[s.P().at(c).label] = s.family[static_cast<size_t>(c)];
  out["family"] = std::move(family);
  return out;
}

StarHom starhom_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source_dim") || !j.contains("unitary"))
    throw BadInput("map JSON needs \"source_dim\" and \"unitary\"");
  return make_star_hom(j["source_dim"].get<int>(), j.value("multiplicity", 1),
                       matrix_from_json(j["unitary"]));
}

Json starhom_to_json(const StarHom& f) {
  Json out;
  out["source_dim"] = f.source_dim;
  out["multiplicity"] = f.multiplicity;
  out["unitary"] = matrix_to_json(f.unitary);
  return out;
}

Json sieve_to_json(const ContextPoset& p, const Sieve& s) {
  Json out;
  out["direction"] = (s.direction == Direction::down) ? "down" : "up";
  Json members = Json::array();
  for (int c : s.members) members.push_back(p.at(c).label);
  out["members"] = std::move(members);
  return out;
}

Json report_to_json(const CheckReport& r) {
  Json out;
  out["name"] = r.name;
  out["trials"] = r.trials;
  out["failures"] = r.failures;
  out["witnesses"] = r.witnesses;
  return out;
}

std::string variant_name(Variant v) {
  return v == Variant::contravariant ? "contravariant" : "covariant";
}

Variant variant_from_string(const std::string& s) {
  if (s == "contravariant") return Variant::contravariant;
  if (s == "covariant") return Variant::covariant;
  throw BadInput("variant must be \"contravariant\" or \"covariant\"");
}

}  // namespace qlogic
