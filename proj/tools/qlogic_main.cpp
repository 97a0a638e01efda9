// Command-line front end: operator and state ingestion, poset construction,
// daseinisation, Heyting operations, truth sieves, dynamics, and the
// property-suite runner. Emits aligned tables by default, JSON with --json.
// Exit codes: 0 success, 1 validation error, 2 property-suite failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlogic/checks.hpp"
#include "qlogic/context.hpp"
#include "qlogic/daseinise.hpp"
#include "qlogic/dynamics.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/json_io.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/state.hpp"
#include "qlogic/subobject.hpp"
#include "qlogic/tolerances.hpp"
#include "qlogic/valuemap.hpp"

namespace {

using qlogic::BorelSet;
using qlogic::Context;
using qlogic::ContextPoset;
using qlogic::Json;
using qlogic::Mat;
using qlogic::Sieve;
using qlogic::StarHom;
using qlogic::State;
using qlogic::Subobject;
using qlogic::Variant;

std::string file_stem(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  return stem.empty() ? std::string("C") : stem;
}

Mat op_from_file(const std::string& path) {
  return qlogic::matrix_from_json(qlogic::load_json_file(path));
}

// A context file is either a context JSON ({"atoms": ...} / {"ops": ...}) or
// a bare operator matrix, read as that operator's eigencontext.
Context context_from_file(const std::string& path) {
  Json j = qlogic::load_json_file(path);
  if (j.is_object() && (j.contains("atoms") || j.contains("ops"))) {
    Context c = qlogic::context_from_json(j);
    if (c.label.empty()) c.label = file_stem(path);
    return c;
  }
  return qlogic::context_from_commuting({qlogic::matrix_from_json(j)}, file_stem(path));
}

// A poset file is either a generator description ({"generators": ...}) or a
// previously emitted poset ({"contexts": [...]}), rebuilt from its contexts.
ContextPoset poset_from_file(const std::string& path) {
  Json j = qlogic::load_json_file(path);
  if (j.is_object() && j.contains("generators")) return qlogic::poset_from_json(j);
  if (j.is_object() && j.contains("contexts")) {
    std::vector<Context> cs;
    for (const auto& cj : j.at("contexts")) cs.push_back(qlogic::context_from_json(cj));
    return qlogic::build_poset(cs, false, j.value("bottom_included", true));
  }
  throw qlogic::BadInput("poset file must contain \"generators\" or \"contexts\"");
}

// Interval literals start with a delimiter or a keyword; anything else is a
// file name holding an interval-set JSON.
BorelSet borel_from_arg(const std::string& arg) {
  if (!arg.empty() && (arg[0] == '(' || arg[0] == '[' || arg == "empty" || arg == "R"))
    return qlogic::parse_borel(arg);
  return qlogic::borel_from_json(qlogic::load_json_file(arg));
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_matrix(const Mat& a) {
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c)
      std::printf("  %+10.6f%+10.6fi", a(r, c).real(), a(r, c).imag());
    std::printf("\n");
  }
}

void print_poset(const ContextPoset& p) {
  std::printf("%-16s %6s\n", "context", "atoms");
  for (int c = 0; c < p.size(); ++c)
    std::printf("%-16s %6d\n", p.at(c).label.c_str(), p.at(c).natoms());
  std::printf("order (coarser < finer):\n");
  for (int c = 0; c < p.size(); ++c)
    for (int d = 0; d < p.size(); ++d)
      if (d != c && p.leq(d, c))
        std::printf("  %s < %s\n", p.at(d).label.c_str(), p.at(c).label.c_str());
}

void print_subobject(const Subobject& s) {
  const ContextPoset& p = s.P();
  std::printf("variant: %s\n", qlogic::variant_name(s.variant).c_str());
  for (int c = 0; c < p.size(); ++c) {
    std::printf("%-16s", p.at(c).label.c_str());
    for (int i : s.family[static_cast<size_t>(c)]) std::printf(" %d", i);
    std::printf("\n");
  }
}

void print_sieve(const ContextPoset& p, const Sieve& s) {
  std::printf("direction: %s\n", s.direction == qlogic::Direction::down ? "down" : "up");
  std::printf("members:");
  for (int c : s.members) std::printf(" %s", p.at(c).label.c_str());
  std::printf("\n");
}

// Default stage poset for an operator: the down-closure of its eigencontext.
std::shared_ptr<const ContextPoset> default_poset_for(const Mat& a, const std::string& label) {
  Context c = qlogic::context_from_commuting({a}, label);
  return std::make_shared<const ContextPoset>(qlogic::build_poset({c}, true, true));
}

// Smallest family of contexts containing the seed and closed under the
// induced context map, or BadInput past the cap.
std::vector<Context> orbit_closure(const StarHom& h, Context seed, int cap) {
  std::vector<Context> out{std::move(seed)};
  for (size_t i = 0; i < out.size(); ++i) {
    Context img = qlogic::image_context(h, out[i]);
    bool known = false;
    for (const auto& c : out)
      if (qlogic::context_equal(c, img)) { known = true; break; }
    if (!known) {
      if (static_cast<int>(out.size()) >= cap)
        throw qlogic::BadInput("induced-map orbit exceeds cap " + std::to_string(cap) +
                               "; pass an explicitly closed poset with --poset");
      out.push_back(std::move(img));
    }
  }
  return out;
}

struct CtxBuildArgs {
  std::vector<std::string> gen_files;
  bool down_close = false;
  bool drop_bottom = false;
  int cap = 5000;
};

struct DasArgs {
  std::string op_file, context_file;
};

struct PropArgs {
  std::string op_file, delta, variant = "contravariant", poset_file;
};

struct HeytingArgs {
  std::string op, left_file, right_file, poset_file;
};

struct TruthArgs {
  std::string state_file, op_file, delta, variant = "contravariant", poset_file;
  double threshold = 1.0;
};

struct DynArgs {
  std::string unitary_file, op_file, delta, state_file, variant = "contravariant", poset_file;
  int cap = 64;
};

struct CheckArgs {
  std::uint64_t seed = 42;
  int trials = 0;
};

int run_ctx_build(const CtxBuildArgs& a, bool json) {
  std::vector<Context> gens;
  for (const auto& f : a.gen_files) gens.push_back(context_from_file(f));
  ContextPoset p = qlogic::build_poset(gens, a.down_close, !a.drop_bottom, a.cap);
  if (json) emit_json(qlogic::poset_to_json(p));
  else print_poset(p);
  return 0;
}

int run_das(const DasArgs& a, bool json) {
  Mat op = op_from_file(a.op_file);
  Context c = context_from_file(a.context_file);
  Mat outer = qlogic::daseinise_sa_outer(op, c);
  Mat inner = qlogic::daseinise_sa_inner(op, c);
  double scale = 1.0 + qlogic::norm_inf(op);
  bool is_proj = qlogic::norm_inf(op * op - op) <= qlogic::tols().proj * scale;

  std::vector<double> co = c.coefficients(outer);
  std::vector<double> ci = c.coefficients(inner);
  if (json) {
    Json j;
    j["context"] = c.label;
    j["projection"] = is_proj;
    j["outer"] = qlogic::matrix_to_json(outer);
    j["inner"] = qlogic::matrix_to_json(inner);
    j["outer_coefficients"] = co;
    j["inner_coefficients"] = ci;
    if (is_proj) {
      std::vector<int> oa, ia;
      for (int i = 0; i < c.natoms(); ++i) {
        if (co[static_cast<size_t>(i)] > 0.5) oa.push_back(i);
        if (ci[static_cast<size_t>(i)] > 0.5) ia.push_back(i);
      }
      j["outer_atoms"] = oa;
      j["inner_atoms"] = ia;
    }
    emit_json(j);
  } else {
    std::printf("context: %s (%d atoms)%s\n", c.label.c_str(), c.natoms(),
                is_proj ? " [projection]" : "");
    std::printf("outer approximation:\n");
    print_matrix(outer);
    std::printf("inner approximation:\n");
    print_matrix(inner);
    std::printf("%-8s", "atom");
    for (int i = 0; i < c.natoms(); ++i) std::printf(" %12d", i);
    std::printf("\n%-8s", "outer");
    for (double x : co) std::printf(" %12.8f", x);
    std::printf("\n%-8s", "inner");
    for (double x : ci) std::printf(" %12.8f", x);
    std::printf("\n");
  }
  return 0;
}

int run_prop(const PropArgs& a, bool json) {
  Mat op = op_from_file(a.op_file);
  BorelSet delta = borel_from_arg(a.delta);
  Variant v = qlogic::variant_from_string(a.variant);
  std::shared_ptr<const ContextPoset> p =
      a.poset_file.empty()
          ? default_poset_for(op, file_stem(a.op_file))
          : std::make_shared<const ContextPoset>(poset_from_file(a.poset_file));
  Subobject s = qlogic::elementary_prop(op, delta, p, v);
  if (json) emit_json(qlogic::subobject_to_json(s));
  else print_subobject(s);
  return 0;
}

int run_heyting(const HeytingArgs& a, bool json) {
  auto p = std::make_shared<const ContextPoset>(poset_from_file(a.poset_file));
  Subobject left = qlogic::subobject_from_json(qlogic::load_json_file(a.left_file), p);
  Subobject out = left;
  if (a.op == "neg") {
    if (!a.right_file.empty()) throw qlogic::BadInput("neg takes only --left");
    out = qlogic::heyting_neg(left);
  } else {
    if (a.right_file.empty()) throw qlogic::BadInput(a.op + " needs --right");
    Subobject right = qlogic::subobject_from_json(qlogic::load_json_file(a.right_file), p);
    if (a.op == "meet") out = qlogic::heyting_meet(left, right);
    else if (a.op == "join") out = qlogic::heyting_join(left, right);
    else out = qlogic::heyting_impl(left, right);
  }
  if (json) emit_json(qlogic::subobject_to_json(out));
  else print_subobject(out);
  return 0;
}

int run_truth(const TruthArgs& a, bool json) {
  State psi = qlogic::state_from_json(qlogic::load_json_file(a.state_file));
  Mat op = op_from_file(a.op_file);
  BorelSet delta = borel_from_arg(a.delta);
  Variant v = qlogic::variant_from_string(a.variant);
  std::shared_ptr<const ContextPoset> p =
      a.poset_file.empty()
          ? default_poset_for(op, file_stem(a.op_file))
          : std::make_shared<const ContextPoset>(poset_from_file(a.poset_file));
  Subobject s = qlogic::elementary_prop(op, delta, p, v);
  Sieve sieve = qlogic::truth_sieve(psi, s, a.threshold);
  if (json) {
    Json j;
    j["threshold"] = a.threshold;
    j["sieve"] = qlogic::sieve_to_json(*p, sieve);
    emit_json(j);
  } else {
    print_sieve(*p, sieve);
  }
  return 0;
}

int run_dyn(const DynArgs& a, bool json) {
  Json uj = qlogic::load_json_file(a.unitary_file);
  StarHom h = (uj.is_object() && uj.contains("unitary"))
                  ? qlogic::starhom_from_json(uj)
                  : qlogic::make_star_hom(static_cast<int>(qlogic::matrix_from_json(uj).rows()),
                                          1, qlogic::matrix_from_json(uj));
  State psi = qlogic::state_from_json(qlogic::load_json_file(a.state_file));
  Mat op = op_from_file(a.op_file);
  BorelSet delta = borel_from_arg(a.delta);
  Variant v = qlogic::variant_from_string(a.variant);

  ContextPoset p;
  if (a.poset_file.empty()) {
    Context seed = qlogic::context_from_commuting({op}, file_stem(a.op_file));
    p = qlogic::build_poset(orbit_closure(h, std::move(seed), a.cap), true, true);
  } else {
    p = poset_from_file(a.poset_file);
  }

  qlogic::TransformedTruth out = qlogic::transform_truth(h, psi, op, delta, p, v);
  if (json) {
    Json j;
    j["source"] = qlogic::sieve_to_json(p, out.sieve1);
    j["transformed"] = qlogic::sieve_to_json(p, out.sieve2);
    j["equal_under_map"] = out.equal_under_map;
    emit_json(j);
  } else {
    std::printf("source sieve:\n");
    print_sieve(p, out.sieve1);
    std::printf("transformed sieve:\n");
    print_sieve(p, out.sieve2);
    std::printf("verdict: %s\n", out.equal_under_map ? "agree" : "DISAGREE");
  }
  return 0;
}

int run_check(const CheckArgs& a, bool json) {
  std::vector<qlogic::CheckReport> reports = qlogic::run_all_checks(a.seed, a.trials);
  int total_failures = 0;
  for (const auto& r : reports) total_failures += r.failures;
  if (json) {
    Json j;
    j["seed"] = a.seed;
    j["reports"] = Json::array();
    for (const auto& r : reports) j["reports"].push_back(qlogic::report_to_json(r));
    j["total_failures"] = total_failures;
    j["pass"] = total_failures == 0;
    emit_json(j);
  } else {
    std::printf("%-44s %8s %9s  %s\n", "check", "trials", "failures", "verdict");
    for (const auto& r : reports) {
      std::printf("%-44s %8d %9d  %s\n", r.name.c_str(), r.trials, r.failures,
                  r.ok() ? "PASS" : "FAIL");
      for (const auto& w : r.witnesses) std::printf("    witness: %s\n", w.c_str());
    }
    std::printf("total failures: %d\n", total_failures);
  }
  return total_failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contravariant and covariant topos models over matrix algebras"};
  app.require_subcommand(1);
  // Global flags may appear before or after the subcommand name.
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "emit JSON instead of aligned tables");

  CtxBuildArgs ctx_args;
  auto* ctx = app.add_subcommand("ctx", "context poset operations");
  ctx->require_subcommand(1);
  auto* build = ctx->add_subcommand("build", "build a poset from generator files");
  build->add_option("--gen", ctx_args.gen_files, "operator or context JSON files")
      ->required()
      ->expected(-1);
  build->add_flag("--down-close", ctx_args.down_close, "add all coarsenings");
  build->add_flag("--drop-bottom", ctx_args.drop_bottom, "omit the trivial context");
  build->add_option("--cap", ctx_args.cap, "maximum number of contexts");

  DasArgs das_args;
  auto* das = app.add_subcommand("das", "daseinise an operator at a context");
  das->add_option("--op", das_args.op_file, "operator JSON file")->required();
  das->add_option("--context", das_args.context_file, "context or operator JSON file")
      ->required();

  PropArgs prop_args;
  auto* prop = app.add_subcommand("prop", "elementary proposition as a subobject");
  prop->add_option("--op", prop_args.op_file, "operator JSON file")->required();
  prop->add_option("--delta", prop_args.delta, "interval literal or JSON file")->required();
  prop->add_option("--variant", prop_args.variant, "contravariant|covariant");
  prop->add_option("--poset", prop_args.poset_file, "poset JSON file");

  HeytingArgs hey_args;
  auto* hey = app.add_subcommand("heyting", "lattice operations on subobjects");
  hey->add_option("op", hey_args.op, "meet|join|neg|impl")
      ->required()
      ->check(CLI::IsMember({"meet", "join", "neg", "impl"}));
  hey->add_option("--left", hey_args.left_file, "subobject JSON file")->required();
  hey->add_option("--right", hey_args.right_file, "subobject JSON file");
  hey->add_option("--poset", hey_args.poset_file, "poset JSON file")->required();

  TruthArgs truth_args;
  auto* truth = app.add_subcommand("truth", "truth sieve of a proposition in a state");
  truth->add_option("--state", truth_args.state_file, "state JSON file")->required();
  truth->add_option("--op", truth_args.op_file, "operator JSON file")->required();
  truth->add_option("--delta", truth_args.delta, "interval literal or JSON file")->required();
  truth->add_option("--variant", truth_args.variant, "contravariant|covariant");
  truth->add_option("--threshold", truth_args.threshold, "certainty threshold x");
  truth->add_option("--poset", truth_args.poset_file, "poset JSON file");

  DynArgs dyn_args;
  auto* dyn = app.add_subcommand("dyn", "transport a truth sieve along an automorphism");
  dyn->add_option("--unitary", dyn_args.unitary_file, "unitary matrix or map JSON file")
      ->required();
  dyn->add_option("--op", dyn_args.op_file, "operator JSON file")->required();
  dyn->add_option("--delta", dyn_args.delta, "interval literal or JSON file")->required();
  dyn->add_option("--state", dyn_args.state_file, "state JSON file")->required();
  dyn->add_option("--variant", dyn_args.variant, "contravariant|covariant");
  dyn->add_option("--poset", dyn_args.poset_file, "poset JSON file (must be map-closed)");
  dyn->add_option("--cap", dyn_args.cap, "orbit cap for the default poset");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "run the full property suite");
  check->add_option("--seed", check_args.seed, "generator seed");
  check->add_option("--trials", check_args.trials, "override per-check trial counts");

  try {
    app.parse(argc, argv);
    // After parse so a malformed value reports through the handler below,
    // honoring --json; before dispatch so every command sees the override.
    qlogic::apply_env_tolerance();
    if (build->parsed()) return run_ctx_build(ctx_args, json);
    if (das->parsed()) return run_das(das_args, json);
    if (prop->parsed()) return run_prop(prop_args, json);
    if (hey->parsed()) return run_heyting(hey_args, json);
    if (truth->parsed()) return run_truth(truth_args, json);
    if (dyn->parsed()) return run_dyn(dyn_args, json);
    if (check->parsed()) return run_check(check_args, json);
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const qlogic::Error& e) {
    // what() carries the code prefix already; keep code and detail apart.
    std::string detail = e.what();
    std::string prefix = e.code + ": ";
    if (detail.rfind(prefix, 0) == 0) detail = detail.substr(prefix.size());
    Json j;
    j["error"] = e.code;
    j["message"] = detail;
    if (json) std::cout << j.dump(2) << "\n";
    else std::cerr << "error [" << e.code << "]: " << detail << "\n";
    return 1;
  }
}
