#pragma once

#include <filesystem>
#include <string>

#include "asck/catalog.hpp"
#include "asck/congruence.hpp"
#include "asck/decision.hpp"
#include "asck/variety.hpp"
#include "asck/varspec.hpp"

namespace asck {

// Algebra files: {"name": str, "size": int,
//                 "signature": [{"op": str, "arity": int}...],
//                 "tables": {op: nested row-major arrays}}
// An arity-0 table is a plain integer, arity k > 0 nests k array levels with
// the first argument outermost. Serialization is byte-stable (sorted keys).
std::string algebra_to_json(const FiniteAlgebra& a, int indent = 2);
FiniteAlgebra algebra_from_json(const std::string& text);
FiniteAlgebra load_algebra(const std::filesystem::path& path);
void save_algebra(const FiniteAlgebra& a, const std::filesystem::path& path);

// Poset files: {"size": n, "lt": [[bool]]}
std::string poset_to_json(const Poset& p, int indent = 2);
Poset poset_from_json(const std::string& text);
Poset load_poset(const std::filesystem::path& path);

// Variety spec files: {"generators": [path|inline-algebra...],
//                      "mode": "variety"|"quasivariety", "caps": {...}}
// Paths are resolved relative to the spec file.
VarietySpec load_variety_spec(const std::filesystem::path& path);
VarietySpec variety_spec_from_json(const std::string& text,
                                   const std::filesystem::path& base_dir = {});
std::string variety_spec_to_json(const VarietySpec& k, int indent = 2);

// Standard algebra format plus a "generators" field with the free
// generator element ids. Requires materialized tables.
std::string free_algebra_to_json(const FreeAlgebra& f, int indent = 2);

std::string congruence_to_json(const Congruence& c);
std::string lattice_to_json(const CongruenceLattice& lat, int indent = 2);

std::string verdict_to_json(const Verdict& v, int indent = 2);
Verdict verdict_from_json(const std::string& text);

std::string qi_classification_to_json(const QiClassification& c, int indent = 2);
std::string splitting_to_json(const SplittingReport& r, int indent = 2);
std::string kind_report_to_json(const AlgebraKindReport& r, int indent = 2);
std::string in_qf_to_json(const InQfResult& r, int indent = 2);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace asck
