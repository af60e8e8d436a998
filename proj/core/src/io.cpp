#include "asck/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace asck {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

json nested_table(const std::vector<int32_t>& table, int arity, int n, size_t& at) {
  if (arity == 0) return table[at++];
  json out = json::array();
  for (int i = 0; i < n; ++i) out.push_back(nested_table(table, arity - 1, n, at));
  return out;
}

void flatten_table(const json& j, int arity, int n, std::vector<int32_t>& out) {
  if (arity == 0) {
    if (!j.is_number_integer()) throw ParseError("table entry must be an integer");
    out.push_back(j.get<int32_t>());
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError("table nesting does not match size");
  for (const auto& e : j) flatten_table(e, arity - 1, n, out);
}

json algebra_json(const FiniteAlgebra& a) {
  json j;
  j["name"] = a.name();
  j["size"] = a.size();
  json sigj = json::array();
  for (const auto& op : a.signature().ops()) sigj.push_back({{"op", op.name}, {"arity", op.arity}});
  j["signature"] = sigj;
  json tables;
  for (int op = 0; op < a.signature().num_ops(); ++op) {
    size_t at = 0;
    tables[a.signature().name(op)] =
        nested_table(a.table(op), a.signature().arity(op), a.size(), at);
  }
  j["tables"] = tables;
  return j;
}

FiniteAlgebra algebra_from(const json& j) {
  if (!j.is_object()) throw ParseError("algebra must be a JSON object");
  if (!j.contains("size") || !j.contains("signature") || !j.contains("tables"))
    throw ParseError("algebra needs size, signature and tables");
  int n = j.at("size").get<int>();
  std::vector<OpSym> ops;
  for (const auto& e : j.at("signature"))
    ops.push_back({e.at("op").get<std::string>(), e.at("arity").get<int>()});
  Signature sig(std::move(ops));
  std::vector<std::vector<int32_t>> tables;
  const json& tj = j.at("tables");
  for (int op = 0; op < sig.num_ops(); ++op) {
    if (!tj.contains(sig.name(op))) throw ParseError("missing table for " + sig.name(op));
    std::vector<int32_t> flat;
    flatten_table(tj.at(sig.name(op)), sig.arity(op), n, flat);
    tables.push_back(std::move(flat));
  }
  std::string name = j.value("name", std::string{});
  return FiniteAlgebra(sig, n, std::move(tables), name);
}

json caps_json(const Caps& c) {
  return {{"rank_max", c.rank_max}, {"size_max", c.size_max}, {"time_budget_ms", c.time_budget_ms}};
}

Caps caps_from(const json& j) {
  Caps c;
  if (j.contains("rank_max")) c.rank_max = j.at("rank_max").get<int>();
  if (j.contains("size_max")) c.size_max = j.at("size_max").get<long>();
  if (j.contains("time_budget_ms")) c.time_budget_ms = j.at("time_budget_ms").get<long>();
  if (j.contains("time_budget")) c.time_budget_ms = j.at("time_budget").get<long>();
  if (c.rank_max < 0 || c.size_max <= 0 || c.time_budget_ms < 0)
    throw ParseError("caps must be positive");
  return c;
}

json varspec_json(const VarietySpec& k) {
  json j;
  j["mode"] = k.mode == ClassMode::Variety ? "variety" : "quasivariety";
  j["caps"] = caps_json(k.caps);
  if (!k.name.empty()) j["name"] = k.name;
  json gens = json::array();
  for (const auto& g : k.generators) gens.push_back(algebra_json(*g));
  j["generators"] = gens;
  return j;
}

VarietySpec varspec_from(const json& j, const std::filesystem::path& base) {
  VarietySpec k;
  if (!j.contains("generators") || !j.at("generators").is_array() ||
      j.at("generators").empty())
    throw ParseError("variety spec needs a nonempty generators array");
  std::string mode = j.value("mode", std::string("variety"));
  if (mode == "variety")
    k.mode = ClassMode::Variety;
  else if (mode == "quasivariety")
    k.mode = ClassMode::Quasivariety;
  else
    throw ParseError("mode must be variety or quasivariety");
  if (j.contains("caps")) k.caps = caps_from(j.at("caps"));
  k.name = j.value("name", std::string{});
  for (const auto& e : j.at("generators")) {
    if (e.is_string()) {
      std::filesystem::path p = e.get<std::string>();
      if (p.is_relative()) p = base / p;
      k.generators.push_back(std::make_shared<FiniteAlgebra>(load_algebra(p)));
    } else {
      k.generators.push_back(std::make_shared<FiniteAlgebra>(algebra_from(e)));
    }
  }
  k.signature();  // validates agreement
  return k;
}

json hom_json(const Homomorphism& h) {
  json j;
  j["map"] = h.map;
  j["injective"] = h.injective;
  j["surjective"] = h.surjective;
  return j;
}

Homomorphism hom_from(const json& j) {
  Homomorphism h;
  h.map = j.at("map").get<std::vector<int32_t>>();
  h.injective = j.value("injective", false);
  h.surjective = j.value("surjective", false);
  return h;
}

json certificate_json(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        json j;
        if constexpr (std::is_same_v<T, EmbeddingCert>) {
          j["type"] = "embedding";
          j["label"] = c.label;
          j["source"] = algebra_json(c.source);
          j["rank"] = c.rank;
          j["map"] = c.map;
          j["target"] = c.target_kind;
        } else if constexpr (std::is_same_v<T, NoHomToRetractCert>) {
          j["type"] = "no_hom_to_retract";
          j["label"] = c.label;
          j["source"] = algebra_json(c.source);
          j["f0_size"] = c.f0_size;
        } else if constexpr (std::is_same_v<T, TopJoinReducibleCert>) {
          j["type"] = "top_join_reducible";
          j["label"] = c.label;
          j["si"] = algebra_json(c.si);
          j["a"] = c.a;
          j["b"] = c.b;
          j["validated_ranks"] = c.validated_ranks;
        } else if constexpr (std::is_same_v<T, AsccObstructionCert>) {
          j["type"] = "ascc_obstruction";
          j["source"] = algebra_json(c.source);
          j["x"] = c.x;
          j["y"] = c.y;
          j["validated_ranks"] = c.validated_ranks;
        } else if constexpr (std::is_same_v<T, SeparationCert>) {
          j["type"] = "separation";
          j["label"] = c.label;
          j["source"] = algebra_json(c.source);
          json seps = json::array();
          for (const auto& s : c.seps)
            seps.push_back({{"a", s.a}, {"b", s.b}, {"rank", s.rank}, {"hom", hom_json(s.hom)}});
          j["seps"] = seps;
        }
        return j;
      },
      cert);
}

Certificate certificate_from(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "embedding") {
    EmbeddingCert c;
    c.label = j.value("label", std::string{});
    c.source = algebra_from(j.at("source"));
    c.rank = j.at("rank").get<int>();
    c.map = j.at("map").get<std::vector<int32_t>>();
    c.target_kind = j.value("target", std::string("free"));
    return c;
  }
  if (type == "no_hom_to_retract") {
    NoHomToRetractCert c;
    c.label = j.value("label", std::string{});
    c.source = algebra_from(j.at("source"));
    c.f0_size = j.at("f0_size").get<long>();
    return c;
  }
  if (type == "top_join_reducible") {
    TopJoinReducibleCert c;
    c.label = j.value("label", std::string{});
    c.si = algebra_from(j.at("si"));
    c.a = j.at("a").get<int>();
    c.b = j.at("b").get<int>();
    c.validated_ranks = j.at("validated_ranks").get<std::vector<int>>();
    return c;
  }
  if (type == "ascc_obstruction") {
    AsccObstructionCert c;
    c.source = algebra_from(j.at("source"));
    c.x = j.at("x").get<int>();
    c.y = j.at("y").get<int>();
    c.validated_ranks = j.at("validated_ranks").get<std::vector<int>>();
    return c;
  }
  if (type == "separation") {
    SeparationCert c;
    c.label = j.value("label", std::string{});
    c.source = algebra_from(j.at("source"));
    for (const auto& e : j.at("seps")) {
      InQfResult::Sep s;
      s.a = e.at("a").get<int>();
      s.b = e.at("b").get<int>();
      s.rank = e.at("rank").get<int>();
      s.hom = hom_from(e.at("hom"));
      c.seps.push_back(std::move(s));
    }
    return c;
  }
  throw ParseError("unknown certificate type " + type);
}

}  // namespace

std::string algebra_to_json(const FiniteAlgebra& a, int indent) {
  return algebra_json(a).dump(indent) + "\n";
}

FiniteAlgebra algebra_from_json(const std::string& text) {
  return algebra_from(parse_json(text));
}

FiniteAlgebra load_algebra(const std::filesystem::path& path) {
  return algebra_from_json(read_file(path));
}

void save_algebra(const FiniteAlgebra& a, const std::filesystem::path& path) {
  write_file(path, algebra_to_json(a));
}

std::string poset_to_json(const Poset& p, int indent) {
  json j;
  j["size"] = p.size;
  json rows = json::array();
  for (int a = 0; a < p.size; ++a) {
    json row = json::array();
    for (int b = 0; b < p.size; ++b) row.push_back(p.less(a, b));
    rows.push_back(row);
  }
  j["lt"] = rows;
  return j.dump(indent) + "\n";
}

Poset poset_from_json(const std::string& text) {
  json j = parse_json(text);
  Poset p;
  p.size = j.at("size").get<int>();
  if (p.size < 0) throw ParseError("poset size must be nonnegative");
  const json& rows = j.at("lt");
  if (static_cast<int>(rows.size()) != p.size) throw ParseError("lt matrix has wrong shape");
  p.lt.assign(static_cast<size_t>(p.size) * p.size, 0);
  for (int a = 0; a < p.size; ++a) {
    if (static_cast<int>(rows[a].size()) != p.size) throw ParseError("lt matrix has wrong shape");
    for (int b = 0; b < p.size; ++b)
      p.lt[static_cast<size_t>(a) * p.size + b] = rows[a][b].get<bool>() ? 1 : 0;
  }
  p.validate();
  return p;
}

Poset load_poset(const std::filesystem::path& path) { return poset_from_json(read_file(path)); }

VarietySpec load_variety_spec(const std::filesystem::path& path) {
  return variety_spec_from_json(read_file(path), path.parent_path());
}

VarietySpec variety_spec_from_json(const std::string& text,
                                   const std::filesystem::path& base_dir) {
  return varspec_from(parse_json(text), base_dir);
}

std::string variety_spec_to_json(const VarietySpec& k, int indent) {
  return varspec_json(k).dump(indent) + "\n";
}

std::string free_algebra_to_json(const FreeAlgebra& f, int indent) {
  if (!f.dense) throw PreconditionError("free algebra too large to export as tables");
  json j = algebra_json(*f.dense);
  j["generators"] = f.generators;
  return j.dump(indent) + "\n";
}

std::string congruence_to_json(const Congruence& c) {
  return json(c.labels()).dump() + "\n";
}

std::string lattice_to_json(const CongruenceLattice& lat, int indent) {
  json j;
  json elems = json::array();
  for (const auto& c : lat.elems) elems.push_back(c.labels());
  j["congruences"] = elems;
  json covers = json::array();
  for (auto [a, b] : lat.covers()) covers.push_back({a, b});
  j["covers"] = covers;
  j["count"] = lat.elems.size();
  return j.dump(indent) + "\n";
}

std::string verdict_to_json(const Verdict& v, int indent) {
  json j;
  j["procedure"] = v.procedure;
  j["status"] = status_name(v.status);
  j["inputs"] = varspec_json(v.inputs);
  if (v.inputs_aux) j["inputs_aux"] = varspec_json(*v.inputs_aux);
  if (v.aux_rank >= 0) j["rank"] = v.aux_rank;
  json certs = json::array();
  for (const auto& c : v.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = certs;
  j["explored"] = {{"rank", v.explored_rank}, {"free_sizes", v.free_sizes}};
  j["citations"] = v.citations;
  j["notes"] = v.notes;
  return j.dump(indent) + "\n";
}

Verdict verdict_from_json(const std::string& text) {
  json j = parse_json(text);
  Verdict v;
  v.procedure = j.at("procedure").get<std::string>();
  std::string st = j.at("status").get<std::string>();
  v.status = st == "HOLDS" ? Status::Holds : (st == "FAILS" ? Status::Fails : Status::Inconclusive);
  v.inputs = varspec_from(j.at("inputs"), {});
  if (j.contains("inputs_aux")) v.inputs_aux = varspec_from(j.at("inputs_aux"), {});
  if (j.contains("rank")) v.aux_rank = j.at("rank").get<int>();
  for (const auto& e : j.at("certificates")) v.certificates.push_back(certificate_from(e));
  if (j.contains("explored")) {
    v.explored_rank = j.at("explored").value("rank", -1);
    if (j.at("explored").contains("free_sizes"))
      v.free_sizes = j.at("explored").at("free_sizes").get<std::vector<long>>();
  }
  if (j.contains("citations")) v.citations = j.at("citations").get<std::vector<std::string>>();
  if (j.contains("notes")) v.notes = j.at("notes").get<std::vector<std::string>>();
  return v;
}

std::string qi_classification_to_json(const QiClassification& c, int indent) {
  json j;
  j["classification"] = qi_kind_name(c.kind);
  j["capped"] = c.capped;
  if (c.explored_rank >= 0) j["verified_up_to_rank"] = c.explored_rank;
  if (!c.free_sizes.empty()) j["free_sizes"] = c.free_sizes;
  if (c.kind == QiClassification::NotAdmissible) {
    j["refuted_rank"] = c.refuted_rank;
    j["refuting_assignment"] = c.refuting_assignment;
  }
  if (c.premise_algebra_size >= 0) j["premise_algebra_size"] = c.premise_algebra_size;
  if (c.unifier) j["unifier"] = hom_json(*c.unifier);
  if (c.nonunifiability_maps_checked >= 0)
    j["nonunifiability_maps_checked"] = c.nonunifiability_maps_checked;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j.dump(indent) + "\n";
}

std::string splitting_to_json(const SplittingReport& r, int indent) {
  json j;
  j["mckinsey_holds"] = r.mckinsey_holds;
  if (r.mckinsey_witness)
    j["mckinsey_witness"] = {{"generator", r.mckinsey_witness->first},
                             {"element", r.mckinsey_witness->second}};
  j["s2_present"] = r.s2_present;
  j["biconditional_ok"] = r.biconditional_ok;
  if (r.asc_status) j["asc_status"] = status_name(*r.asc_status);
  if (r.derived_sc) j["derived_sc"] = *r.derived_sc;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j.dump(indent) + "\n";
}

std::string kind_report_to_json(const AlgebraKindReport& r, int indent) {
  json j;
  j["bounded_lattice"] = r.bounded_lattice;
  j["heyting"] = r.heyting;
  j["modal"] = r.modal;
  j["closure"] = r.closure;
  j["monadic"] = r.monadic;
  j["mckinsey"] = r.mckinsey;
  json fails = json::array();
  for (const auto& f : r.failures)
    fails.push_back({{"law", f.law}, {"assignment", f.assignment}});
  j["failures"] = fails;
  if (r.four_witness) j["contains_four_witness"] = *r.four_witness;
  j["contains_four"] = r.four_witness.has_value();
  if (r.s2_embedding) j["s2_embedding"] = hom_json(*r.s2_embedding);
  j["contains_s2"] = r.s2_embedding.has_value();
  return j.dump(indent) + "\n";
}

std::string in_qf_to_json(const InQfResult& r, int indent) {
  json j;
  j["verdict"] = tri_name(r.verdict);
  json fam = json::array();
  for (const auto& s : r.family)
    fam.push_back({{"a", s.a}, {"b", s.b}, {"rank", s.rank}, {"hom", hom_json(s.hom)}});
  j["family"] = fam;
  j["no_hom_to_f0"] = r.no_hom_to_f0;
  if (r.f0_size > 0) j["f0_size"] = r.f0_size;
  j["free_sizes"] = r.free_sizes;
  j["max_rank"] = r.max_rank;
  return j.dump(indent) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

}  // namespace asck
