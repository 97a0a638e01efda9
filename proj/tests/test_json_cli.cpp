#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "qlogic/checks.hpp"
#include "qlogic/errors.hpp"
#include "qlogic/json_io.hpp"
#include "qlogic/rng.hpp"
#include "support.hpp"

using namespace qlogic;
using qtest::atom_index;
using qtest::diag2;
using qtest::mat_eq;
using qtest::poset_zx;

TEST_CASE("matrix serialization") {
  Rng rng(71);
  Mat a = rng.hermitian(3);
  CHECK(mat_eq(a, matrix_from_json(matrix_to_json(a)), 1e-12));

  // Plain numbers are accepted as real entries.
  Json j = Json::parse(R"({"dim": 2, "rows": [[1, 0], [0, -1]]})");
  CHECK(mat_eq(matrix_from_json(j), pauli_z()));

  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2})")), BadInput);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 3, "rows": [[1]]})")), BadInput);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows": [[1, 0], [1]]})")), BadInput);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows": [["x", 0], [0, 1]]})")), BadInput);
}

TEST_CASE("interval literal parsing") {
  BorelSet w = parse_borel("(0.5,1.5)");
  CHECK(w.contains(1.0));
  CHECK_FALSE(w.contains(0.5));
  CHECK_FALSE(w.contains(1.5));

  BorelSet h = parse_borel("[-1,1)");
  CHECK(h.contains(-1.0));
  CHECK_FALSE(h.contains(1.0));

  BorelSet u = parse_borel("(-inf,0]u(1,2)");
  CHECK(u.contains(-5.0));
  CHECK(u.contains(0.0));
  CHECK(u.contains(1.5));
  CHECK_FALSE(u.contains(0.5));
  CHECK_FALSE(u.contains(1.0));
  CHECK_FALSE(u.contains(2.0));

  // Whitespace is insignificant.
  BorelSet ws = parse_borel(" ( -1 , 1 ) ");
  CHECK(ws.contains(0.0));

  CHECK_FALSE(parse_borel("empty").contains(0.0));
  CHECK(parse_borel("R").contains(1e9));

  CHECK(format_borel(parse_borel("(0.5,1.5)")) == "(0.5,1.5)");
  CHECK(format_borel(parse_borel("(-inf,0]u(1,2)")) == "(-inf,0] u (1,2)");
  CHECK(format_borel(BorelSet::empty()) == "empty");
  CHECK(format_borel(BorelSet::real_line()) == "(-inf,inf)");

  CHECK_THROWS_AS(parse_borel("foo"), BadInput);
  CHECK_THROWS_AS(parse_borel("(1,2"), BadInput);
  CHECK_THROWS_AS(parse_borel("(1;2)"), BadInput);
  CHECK_THROWS_AS(parse_borel("(a,b)"), BadInput);
  CHECK_THROWS_AS(parse_borel("(1,2)(3,4)"), BadInput);
  CHECK_THROWS_AS(parse_borel(""), BadInput);
}

TEST_CASE("interval set from JSON in both forms") {
  BorelSet s1 = borel_from_json(Json("(0,1]"));
  CHECK(s1.contains(1.0));
  CHECK_FALSE(s1.contains(0.0));

  Json jp = Json::parse(R"({"pieces": [{"lo": 0, "hi": 1, "hi_closed": true},
                                       {"lo": 2, "hi": 3}]})");
  BorelSet s2 = borel_from_json(jp);
  CHECK(s2.contains(1.0));
  CHECK(s2.contains(2.5));
  CHECK_FALSE(s2.contains(2.0));
  CHECK_FALSE(s2.contains(0.0));

  CHECK_THROWS_AS(borel_from_json(Json(3.0)), BadInput);
}

TEST_CASE("state serialization") {
  State p0 = state_from_json(Json::parse(R"({"pure": [1, 0]})"));
  CHECK(mat_eq(p0.rho, diag2(1, 0)));

  // Amplitudes may be complex pairs, and normalization is applied on load.
  State pi = state_from_json(Json::parse(R"({"pure": [[0, 1], [0, 0]]})"));
  CHECK(mat_eq(pi.rho, diag2(1, 0), 1e-12));
  State p3 = state_from_json(Json::parse(R"({"pure": [3, 0]})"));
  CHECK(mat_eq(p3.rho, diag2(1, 0), 1e-12));

  Rng rng(72);
  State mixed = make_state(rng.density(3));
  CHECK(mat_eq(mixed.rho, state_from_json(state_to_json(mixed)).rho, 1e-12));

  // Trace 2 is not a state.
  CHECK_THROWS_AS(state_from_json(matrix_to_json(identity(2))), BadInput);
}

TEST_CASE("context serialization") {
  Json jz = Json::parse(R"({"label": "Cz", "ops": [{"rows": [[1, 0], [0, -1]]}]})");
  Context cz = context_from_json(jz);
  CHECK(cz.label == "Cz");
  CHECK(cz.natoms() == 2);
  CHECK(atom_index(cz, diag2(1, 0)) >= 0);

  Context cx = context_x();
  CHECK(context_equal(context_from_json(context_to_json(cx)), cx));

  CHECK_THROWS_AS(context_from_json(Json::parse(R"({"label": "empty"})")), BadInput);
  // Atoms that do not resolve the identity are rejected downstream.
  Json bad = Json::parse(R"({"atoms": [{"rows": [[1, 0], [0, 0]]}]})");
  CHECK_THROWS_AS(context_from_json(bad), Error);
}

TEST_CASE("poset serialization") {
  Json spec = Json::parse(R"({
    "generators": {
      "Cz": [{"rows": [[1, 0], [0, -1]]}],
      "Cx": [{"rows": [[0, 1], [1, 0]]}]
    },
    "down_close": true
  })");
  ContextPoset p = poset_from_json(spec);
  CHECK(p.size() == 3);
  CHECK(p.bottom_included);
  CHECK(p.find_label("Cz") >= 0);
  CHECK(p.find_label("Cx") >= 0);

  Json out = poset_to_json(p);
  CHECK(out["contexts"].size() == 3);
  CHECK(out["bottom_included"] == true);
  CHECK(out["down_closed"] == true);
  // Strict order pairs: the bottom sits below each maximal context.
  CHECK(out["order"].size() == 2);

  CHECK_THROWS_AS(poset_from_json(Json::parse(R"({"contexts": []})")), BadInput);
}

TEST_CASE("subobject serialization round trips and validates") {
  auto sp = poset_zx();
  for (Variant v : {Variant::contravariant, Variant::covariant}) {
    Subobject s = elementary_prop(pauli_z(), BorelSet::interval(0.5, 1.5), sp, v);
    Subobject back = subobject_from_json(subobject_to_json(s), sp);
    CHECK(subobject_equal(s, back));
  }

  CHECK_THROWS_AS(
      subobject_from_json(Json::parse(R"({"variant": "contravariant",
                                          "family": {"Nope": [0]}})"), sp),
      BadInput);
  CHECK_THROWS_AS(
      subobject_from_json(Json::parse(R"({"variant": "contravariant",
                                          "family": {"Cz": [7]}})"), sp),
      BadInput);
  // Full at a maximal stage but empty below: not closed under restriction.
  CHECK_THROWS_AS(
      subobject_from_json(Json::parse(R"({"variant": "contravariant",
                                          "family": {"Cz": [0, 1]}})"), sp),
      BadInput);
  // Full at the bottom but empty above: not closed under refinement.
  CHECK_THROWS_AS(
      subobject_from_json(Json::parse(R"({"variant": "covariant",
                                          "family": {"C1": [0]}})"), sp),
      BadInput);
}

TEST_CASE("unital map serialization") {
  double s = 1.0 / std::sqrt(2.0);
  Mat u(2, 2);
  u << s, s, s, -s;
  StarHom h = make_star_hom(2, 1, u);
  StarHom back = starhom_from_json(starhom_to_json(h));
  CHECK(back.source_dim == 2);
  CHECK(back.multiplicity == 1);
  CHECK(mat_eq(back.apply(pauli_z()), pauli_x(), 1e-12));

  // Multiplicity defaults to 1.
  Json jid = Json::parse(R"({"source_dim": 2,
                             "unitary": {"rows": [[1, 0], [0, 1]]}})");
  CHECK(starhom_from_json(jid).is_automorphism());

  CHECK_THROWS_AS(starhom_from_json(Json::parse(R"({"source_dim": 2})")), BadInput);
}

TEST_CASE("sieve and report serialization") {
  auto sp = poset_zx();
  State psi = pure_state({Cplx(1, 0), Cplx(0, 0)});
  BorelSet delta = BorelSet::interval(0.5, 1.5);

  Subobject cov = elementary_prop(pauli_z(), delta, sp, Variant::covariant);
  Json jc = sieve_to_json(*sp, truth_sieve(psi, cov, 1.0));
  CHECK(jc["direction"] == "up");
  REQUIRE(jc["members"].size() == 1);
  CHECK(jc["members"][0] == "Cz");

  Subobject con = elementary_prop(pauli_z(), delta, sp, Variant::contravariant);
  Json jd = sieve_to_json(*sp, truth_sieve(psi, con, 1.0));
  CHECK(jd["direction"] == "down");
  CHECK(jd["members"].size() == 3);

  CheckReport r{"demo"};
  r.pass();
  r.fail("w0");
  Json jr = report_to_json(r);
  CHECK(jr["name"] == "demo");
  CHECK(jr["trials"] == 2);
  CHECK(jr["failures"] == 1);
  CHECK(jr["witnesses"][0] == "w0");
}

TEST_CASE("file loading") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path();
  fs::path good = dir / "qlogic_io_ok.json";
  fs::path bad = dir / "qlogic_io_bad.json";
  {
    std::ofstream(good.string()) << R"({"rows": [[1, 0], [0, -1]]})";
    std::ofstream(bad.string()) << "{nope";
  }
  CHECK(mat_eq(matrix_from_json(load_json_file(good.string())), pauli_z()));
  CHECK_THROWS_AS(load_json_file(bad.string()), BadInput);
  CHECK_THROWS_AS(load_json_file((dir / "qlogic_io_missing.json").string()), BadInput);
  fs::remove(good);
  fs::remove(bad);
}

TEST_CASE("variant names") {
  CHECK(variant_name(Variant::contravariant) == "contravariant");
  CHECK(variant_name(Variant::covariant) == "covariant");
  CHECK(variant_from_string("covariant") == Variant::covariant);
  CHECK_THROWS_AS(variant_from_string("Covariant"), BadInput);
}
