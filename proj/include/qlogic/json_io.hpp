#ifndef QLOGIC_JSON_IO_HPP
#define QLOGIC_JSON_IO_HPP

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "qlogic/context.hpp"
#include "qlogic/dynamics.hpp"
#include "qlogic/linalg.hpp"
#include "qlogic/poset.hpp"
#include "qlogic/report.hpp"
#include "qlogic/state.hpp"
#include "qlogic/subobject.hpp"

namespace qlogic {

// Insertion-ordered JSON keeps output key order deterministic.
using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);  // BadInput on read/parse failure

// Matrix format: {"dim": n, "rows": [[[re, im], ...], ...]}; a plain number
// is accepted for an entry and read as a real.
Json matrix_to_json(const Mat& a);
Mat matrix_from_json(const Json& j);

// Interval-union literal: pieces like "(a,b)", "[a,b)", "(a,inf)" joined by
// "u"; "empty" for the empty set. Serialized back to the same syntax.
BorelSet parse_borel(const std::string& literal);
std::string format_borel(const BorelSet& s);
BorelSet borel_from_json(const Json& j);  // literal string or {"pieces": [...]}
Json borel_to_json(const BorelSet& s);

// State: density matrix in the matrix format, or {"pure": [amplitudes]}
// (amplitudes are numbers or [re, im] pairs; normalized on load).
State state_from_json(const Json& j);
Json state_to_json(const State& s);

// Context: {"label": ..., "ops": [matrix, ...]} builds the context the
// commuting operators generate; {"label": ..., "atoms": [...]} gives atoms
// directly.
Context context_from_json(const Json& j);
Json context_to_json(const Context& c);

// Poset: {"generators": {label: [matrix, ...]}, "down_close": bool,
// "include_bottom": bool, "cap": int}; the flags default to true, true,
// 5000.
ContextPoset poset_from_json(const Json& j);
Json poset_to_json(const ContextPoset& p);

// Subobject: {"variant": "contravariant"|"covariant",
// "family": {context_label: [atom indices]}}; stages missing from the
// family are empty. Validates the closure rule on load.
Subobject subobject_from_json(const Json& j, std::shared_ptr<const ContextPoset> p);
Json subobject_to_json(const Subobject& s);

// StarHom: {"source_dim": n, "multiplicity": k, "unitary": matrix};
// multiplicity defaults to 1.
StarHom starhom_from_json(const Json& j);
Json starhom_to_json(const StarHom& f);

Json sieve_to_json(const ContextPoset& p, const Sieve& s);
Json report_to_json(const CheckReport& r);

std::string variant_name(Variant v);
Variant variant_from_string(const std::string& s);  // BadInput on anything else

}  // namespace qlogic

#endif
