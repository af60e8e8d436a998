// Command-line surface for the finite-algebra structural-completeness kit:
// algebra file utilities, congruence queries, free-algebra and membership
// operations, catalog constructors, and the ASC/SC decision procedures with
// machine-checkable JSON certificates.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "asck/catalog.hpp"
#include "asck/decision.hpp"
#include "asck/io.hpp"
#include "asck/structure.hpp"
#include "asck/term.hpp"
#include "asck/variety.hpp"

using namespace asck;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct Options {
  bool json = false;
  bool cite = false;
  std::string output;
  std::optional<int> rank_max;
  std::optional<long> size_max;
  std::optional<long> time_budget;
};

Options g_opt;

void add_common(CLI::App* cmd) {
  cmd->add_flag("--json", g_opt.json, "machine-readable JSON output");
  cmd->add_flag("--cite", g_opt.cite, "print the anchors behind a verdict");
  cmd->add_option("-o,--output", g_opt.output, "write the primary artifact to this file");
  cmd->add_option("--rank-max", g_opt.rank_max, "free-algebra rank cap");
  cmd->add_option("--size-max", g_opt.size_max, "closure size cap (elements)");
  cmd->add_option("--time-budget", g_opt.time_budget, "time budget in milliseconds");
}

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  return v ? std::atol(v) : fallback;
}

void apply_caps(Caps& caps) {
  caps.rank_max = static_cast<int>(env_long("ASCK_RANK_MAX", caps.rank_max));
  caps.size_max = env_long("ASCK_SIZE_MAX", caps.size_max);
  caps.time_budget_ms = env_long("ASCK_TIME_BUDGET_MS", caps.time_budget_ms);
  if (g_opt.rank_max) caps.rank_max = *g_opt.rank_max;
  if (g_opt.size_max) caps.size_max = *g_opt.size_max;
  if (g_opt.time_budget) caps.time_budget_ms = *g_opt.time_budget;
  if (caps.rank_max < 0 || caps.size_max <= 0 || caps.time_budget_ms < 0)
    throw ParseError("caps must be positive");
}

VarietySpec load_spec(const std::string& path) {
  VarietySpec k = load_variety_spec(path);
  apply_caps(k.caps);
  return k;
}

// inline s-expressions are accepted alongside file paths
std::string text_or_file(const std::string& arg) {
  if (!arg.empty() && arg.front() == '(') return arg;
  return read_file(arg);
}

void emit(const std::string& content) {
  if (!g_opt.output.empty())
    write_file(g_opt.output, content);
  else
    std::cout << content;
}

void emit_algebra(const FiniteAlgebra& a) {
  if (!g_opt.output.empty())
    save_algebra(a, g_opt.output);
  else
    std::cout << algebra_to_json(a);
}

const std::map<std::string, std::string>& anchor_texts() {
  static const std::map<std::string, std::string> texts = {
      {"criterion.finite-si-embedding",
       "finite ASC criterion: every finite relatively subdirectly irreducible S embeds "
       "into some F(k), or S x C does, with C a finite simple subalgebra of F"},
      {"criterion.finite-si-embedding-sc",
       "finite SC criterion: every finite relatively subdirectly irreducible member "
       "embeds into a free algebra of finite rank"},
      {"fact.si-subdirect-generation",
       "every member of a quasivariety is a subdirect product of relatively "
       "subdirectly irreducible members"},
      {"fact.locally-finite-sfmp",
       "a class generated by finitely many finite algebras is locally finite, hence "
       "the strong finite model property holds"},
      {"fact.jonsson-si-in-hs",
       "Jonsson's lemma: under congruence distributivity the subdirectly irreducible "
       "members of the generated variety are quotients of subalgebras of the generators"},
      {"cert.retract-f0",
       "F(0) is a retract of every F(k): no homomorphism into F(0) means none into any "
       "F(k)"},
      {"cert.free-top-join-irreducible",
       "over a monotone bounded signature the top of every free algebra is "
       "join-irreducible, and this first-order property transfers to ultrapowers"},
      {"fact.cd-implies-fraser-horn",
       "congruence distributivity yields the Fraser-Horn property: congruences of a "
       "product factor as products of congruences"},
      {"fact.asc-core-product-test",
       "the ASC core is {A : A x C lies in Q(F)} for any subalgebra C of F"},
      {"prop.free-join-decomposition",
       "free algebras for the join of a McKinsey variety and a monadic variety are "
       "the products F_U(k) x G_W(k)"},
  };
  return texts;
}

int report_verdict(const Verdict& v) {
  if (g_opt.json) {
    emit(verdict_to_json(v));
  } else {
    std::cout << v.procedure << ": " << status_name(v.status) << "\n";
    for (const auto& n : v.notes) std::cout << "  " << n << "\n";
    std::cout << "  certificates: " << v.certificates.size() << ", explored rank "
              << v.explored_rank << "\n";
    if (!g_opt.output.empty()) write_file(g_opt.output, verdict_to_json(v));
  }
  if (g_opt.cite) {
    for (const auto& c : v.citations) {
      auto it = anchor_texts().find(c);
      std::cerr << "[" << c << "] "
                << (it == anchor_texts().end() ? std::string("(unlisted)") : it->second)
                << "\n";
    }
  }
  return status_exit_code(v.status);
}

FiniteAlgebra catalog_by_name(const std::string& name) {
  if (name == "two" || name == "2") return two();
  if (name == "s2") return s_l(2);
  if (name == "s3") return s_l(3);
  if (name == "four" || name == "4") return four();
  if (name == "m3b") return m3b();
  if (name == "n5b") return n5b();
  if (name == "s43m") return s43m();
  if (name == "two-lat") return two_bounded_lattice();
  if (name == "two-heyting") return upset_heyting(antichain_poset(1));
  if (name == "twosq-heyting") return upset_heyting(antichain_poset(2));
  if (name == "lev2-upset") return upset_heyting(lev_poset(2));
  if (name == "lev2-complex") return complex_closure(lev_poset(2));
  if (name == "foursq") return product2(four(), four()).algebra;
  throw ParseError("unknown catalog name " + name);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"finite-algebra toolkit for structural completeness analysis"};
  app.require_subcommand(1);

  std::string alg_a, alg_b, spec_path, qi_arg, pres_arg, cong_arg, name_arg, verdict_path;
  std::string spec_u, spec_w;
  std::vector<std::string> factor_paths;
  std::string mode_arg = "any";
  int rank_arg = 1;
  int l_arg = 2, n_arg = 2;
  bool with_asc = false;

  // ---- alg ----
  auto* alg = app.add_subcommand("alg", "algebra file operations");
  alg->require_subcommand(1);

  auto* validate = alg->add_subcommand("validate", "parse and validate an algebra file");
  validate->add_option("algebra", alg_a)->required();
  add_common(validate);
  validate->callback([&] {
    FiniteAlgebra a = load_algebra(alg_a);
    std::cout << "ok: " << (a.name().empty() ? "(unnamed)" : a.name()) << ", size "
              << a.size() << ", " << a.signature().num_ops() << " operations\n";
  });

  auto* checkid = alg->add_subcommand("check-id", "check an identity on an algebra");
  checkid->add_option("algebra", alg_a)->required();
  checkid->add_option("identity", qi_arg, "(qi ...) file or inline")->required();
  add_common(checkid);

  auto* checkqi = alg->add_subcommand("check-qi", "check a quasi-identity on an algebra");
  checkqi->add_option("algebra", alg_a)->required();
  checkqi->add_option("qi", qi_arg, "(qi ...) file or inline")->required();
  add_common(checkqi);

  auto* hom = alg->add_subcommand("hom", "search homomorphisms A -> B");
  hom->add_option("source", alg_a)->required();
  hom->add_option("target", alg_b)->required();
  hom->add_option("--mode", mode_arg, "any|all|injective|surjective");
  add_common(hom);

  auto* embed = alg->add_subcommand("embed", "search an embedding A -> B");
  embed->add_option("source", alg_a)->required();
  embed->add_option("target", alg_b)->required();
  add_common(embed);

  auto* iso = alg->add_subcommand("iso", "decide isomorphism");
  iso->add_option("a", alg_a)->required();
  iso->add_option("b", alg_b)->required();
  add_common(iso);

  auto* prod = alg->add_subcommand("product", "direct product of algebra files");
  prod->add_option("factors", factor_paths)->required()->expected(-1);
  add_common(prod);

  auto* quot = alg->add_subcommand("quotient", "quotient by a congruence");
  quot->add_option("algebra", alg_a)->required();
  quot->add_option("--cong", cong_arg, "JSON block-label list, file or inline")->required();
  add_common(quot);

  // ---- cong ----
  auto* cong = app.add_subcommand("cong", "congruence queries");
  cong->require_subcommand(1);

  auto* clist = cong->add_subcommand("list", "the full congruence lattice");
  clist->add_option("algebra", alg_a)->required();
  add_common(clist);

  auto* csi = cong->add_subcommand("si", "subdirect irreducibility and the monolith");
  csi->add_option("algebra", alg_a)->required();
  add_common(csi);

  auto* csimple = cong->add_subcommand("simple", "simplicity");
  csimple->add_option("algebra", alg_a)->required();
  add_common(csimple);

  // ---- var ----
  auto* var = app.add_subcommand("var", "free algebras and membership");
  var->require_subcommand(1);

  auto* vfree = var->add_subcommand("free", "free algebra of finite rank");
  vfree->add_option("--spec", spec_path)->required();
  vfree->add_option("-k,--rank", rank_arg)->required();
  add_common(vfree);

  auto* vmember = var->add_subcommand("member", "membership per the spec mode");
  vmember->add_option("--spec", spec_path)->required();
  vmember->add_option("algebra", alg_a)->required();
  add_common(vmember);

  auto* vsilist = var->add_subcommand("si-list", "subdirectly irreducible members");
  vsilist->add_option("--spec", spec_path)->required();
  add_common(vsilist);

  auto* vpresent = var->add_subcommand("present", "finitely presented algebra");
  vpresent->add_option("--spec", spec_path)->required();
  vpresent->add_option("presentation", pres_arg, "(pres ...) file or inline")->required();
  add_common(vpresent);

  auto* vunify = var->add_subcommand("unify", "unifiability of a finite algebra");
  vunify->add_option("--spec", spec_path)->required();
  vunify->add_option("algebra", alg_a)->required();
  add_common(vunify);

  auto* vinqf = var->add_subcommand("in-qf", "membership in Q(F)");
  vinqf->add_option("--spec", spec_path)->required();
  vinqf->add_option("algebra", alg_a)->required();
  add_common(vinqf);

  // ---- catalog ----
  auto* cat = app.add_subcommand("catalog", "bundled algebras and frame constructions");
  cat->require_subcommand(1);

  // each named algebra is its own subcommand: `asck catalog s2` emits the file
  std::vector<CLI::App*> named_cmds;
  for (const char* nm : {"two", "s2", "s3", "four", "m3b", "n5b", "s43m", "two-lat",
                         "two-heyting", "twosq-heyting", "lev2-upset", "lev2-complex",
                         "foursq"}) {
    auto* c = cat->add_subcommand(nm, "emit this catalog algebra");
    add_common(c);
    named_cmds.push_back(c);
  }

  auto* csl = cat->add_subcommand("s-l", "simple closure algebra with l atoms");
  csl->add_option("l", l_arg)->required();
  add_common(csl);

  auto* cplev = cat->add_subcommand("poset-lev", "2^n minus top, ordered coordinatewise");
  cplev->add_option("n", n_arg)->required();
  add_common(cplev);
  auto* cpchain = cat->add_subcommand("poset-chain", "n-element chain");
  cpchain->add_option("n", n_arg)->required();
  add_common(cpchain);
  auto* cpanti = cat->add_subcommand("poset-antichain", "n-element antichain");
  cpanti->add_option("n", n_arg)->required();
  add_common(cpanti);

  auto* cupset = cat->add_subcommand("upset", "Heyting algebra of up-sets of a poset");
  cupset->add_option("poset", alg_a)->required();
  add_common(cupset);

  auto* ccomplex = cat->add_subcommand("complex", "powerset closure algebra of a poset");
  ccomplex->add_option("poset", alg_a)->required();
  add_common(ccomplex);

  auto* copen = cat->add_subcommand("open", "Heyting algebra of the open elements");
  copen->add_option("algebra", alg_a)->required();
  add_common(copen);

  auto* cclassify = cat->add_subcommand("classify", "kind flags with witnesses");
  cclassify->add_option("algebra", alg_a)->required();
  add_common(cclassify);

  // ---- asc ----
  auto* asc = app.add_subcommand("asc", "structural-completeness procedures");
  asc->require_subcommand(1);

  auto* acheck = asc->add_subcommand("check", "almost structural completeness");
  acheck->add_option("--spec", spec_path)->required();
  add_common(acheck);

  auto* ascheck = asc->add_subcommand("sc-check", "structural completeness");
  ascheck->add_option("--spec", spec_path)->required();
  ascheck->add_flag("--with-asc", with_asc,
                    "also run the ASC check and derive the PSC status");
  add_common(ascheck);

  auto* aclassify = asc->add_subcommand("classify", "quasi-identity classification");
  aclassify->add_option("--spec", spec_path)->required();
  aclassify->add_option("qi", qi_arg, "(qi ...) file or inline")->required();
  add_common(aclassify);

  auto* aascc = asc->add_subcommand("ascc", "ASC-core membership");
  aascc->add_option("--spec", spec_path)->required();
  aascc->add_option("algebra", alg_a)->required();
  add_common(aascc);

  auto* asplit = asc->add_subcommand("splitting", "McKinsey identity vs S_2 presence");
  asplit->add_option("--spec", spec_path)->required();
  asplit->add_flag("--with-asc", with_asc, "also run asc check and derive SC");
  add_common(asplit);

  auto* afree = asc->add_subcommand("free-decomp", "free-algebra join decomposition");
  afree->add_option("--mckinsey", spec_u)->required();
  afree->add_option("--monadic", spec_w)->required();
  afree->add_option("-k,--rank", rank_arg)->required();
  add_common(afree);

  auto* anonembed = asc->add_subcommand("non-embed", "named non-embedding experiments");
  anonembed->add_option("name", name_arg, "heyting-2sq|closure-4sq|heyting-2sq-sanity")
      ->required();
  add_common(anonembed);

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "re-validate a saved verdict certificate");
  verify->add_option("verdict", verdict_path)->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  // alg group
  if (checkid->parsed() || checkqi->parsed()) {
    FiniteAlgebra a = load_algebra(alg_a);
    QuasiIdentity q = parse_quasi_identity(a.signature(), text_or_file(qi_arg));
    CheckResult r = checkid->parsed() ? check_identity(a, q) : check_quasi_identity(a, q);
    if (r.holds) {
      std::cout << "holds (" << r.assignments_checked << " assignments)\n";
      return 0;
    }
    std::cout << "fails at assignment [";
    for (size_t i = 0; i < r.witness.size(); ++i)
      std::cout << (i ? " " : "") << r.witness[i];
    std::cout << "]\n";
    return 1;
  }
  if (hom->parsed() || embed->parsed()) {
    FiniteAlgebra a = load_algebra(alg_a), b = load_algebra(alg_b);
    HomQuery q;
    if (embed->parsed())
      q.mode = HomMode::Injective;
    else if (mode_arg == "all")
      q.mode = HomMode::All;
    else if (mode_arg == "injective")
      q.mode = HomMode::Injective;
    else if (mode_arg == "surjective")
      q.mode = HomMode::Surjective;
    else if (mode_arg != "any")
      throw ParseError("unknown mode " + mode_arg);
    auto r = homs(a, b, q);
    if (!r.found()) {
      std::cout << (r.status == HomSearchResult::Capped ? "inconclusive (node cap)\n"
                                                        : "none\n");
      return r.status == HomSearchResult::Capped ? 2 : 1;
    }
    std::cout << r.homs.size() << " homomorphism(s)\n";
    for (const auto& h : r.homs) {
      std::cout << "[";
      for (size_t i = 0; i < h.map.size(); ++i) std::cout << (i ? " " : "") << h.map[i];
      std::cout << "]" << (h.injective ? " injective" : "")
                << (h.surjective ? " surjective" : "") << "\n";
    }
    return 0;
  }
  if (iso->parsed()) {
    FiniteAlgebra a = load_algebra(alg_a), b = load_algebra(alg_b);
    auto r = is_isomorphic(a, b);
    if (!r) {
      std::cout << "not isomorphic\n";
      return 1;
    }
    std::cout << "isomorphic: [";
    for (size_t i = 0; i < r->map.size(); ++i) std::cout << (i ? " " : "") << r->map[i];
    std::cout << "]\n";
    return 0;
  }
  if (prod->parsed()) {
    std::vector<FiniteAlgebra> algs;
    for (const auto& p : factor_paths) algs.push_back(load_algebra(p));
    if (algs.empty()) throw ParseError("product needs factors");
    std::vector<const FiniteAlgebra*> ptrs;
    for (const auto& a : algs) ptrs.push_back(&a);
    emit_algebra(product(algs.front().signature(), ptrs).algebra);
    return 0;
  }
  if (quot->parsed()) {
    FiniteAlgebra a = load_algebra(alg_a);
    std::string text = cong_arg;
    if (!text.empty() && text.front() != '[') text = read_file(cong_arg);
    std::vector<int32_t> labels;
    {
      size_t at = 0;
      while (at < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[at]))) {
          labels.push_back(std::atoi(text.c_str() + at));
          while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
        } else {
          ++at;
        }
      }
    }
    if (static_cast<int>(labels.size()) != a.size())
      throw ParseError("congruence labels must cover the universe");
    emit_algebra(quotient(a, Congruence::from_labels(labels)).algebra);
    return 0;
  }
  if (validate->parsed()) return 0;

  // cong group
  if (clist->parsed()) {
    auto lat = all_congruences(load_algebra(alg_a));
    emit(lattice_to_json(lat));
    return 0;
  }
  if (csi->parsed()) {
    auto mono = subdirect_irreducibility_monolith(load_algebra(alg_a));
    if (mono) {
      std::cout << "subdirectly irreducible; monolith " << congruence_to_json(*mono);
      return 0;
    }
    std::cout << "not subdirectly irreducible\n";
    return 1;
  }
  if (csimple->parsed()) {
    bool s = is_simple(load_algebra(alg_a));
    std::cout << (s ? "simple\n" : "not simple\n");
    return s ? 0 : 1;
  }

  // var group
  if (vfree->parsed()) {
    VarietySpec k = load_spec(spec_path);
    FreeAlgebra f = free_algebra(k, rank_arg);
    if (g_opt.json || !g_opt.output.empty()) {
      emit(free_algebra_to_json(f));
    } else {
      std::cout << "F(" << rank_arg << "): " << f.size() << " elements, generators at [";
      for (size_t i = 0; i < f.generators.size(); ++i)
        std::cout << (i ? " " : "") << f.generators[i];
      std::cout << "]\n";
    }
    return 0;
  }
  if (vmember->parsed()) {
    VarietySpec k = load_spec(spec_path);
    FiniteAlgebra a = load_algebra(alg_a);
    if (k.mode == ClassMode::Quasivariety) {
      auto r = in_quasivariety(a, k);
      std::cout << (r.member ? "member of Q(K)\n" : "not a member of Q(K)\n");
      if (!r.member && r.counter_pair)
        std::cout << "  unseparated pair (" << r.counter_pair->first << ","
                  << r.counter_pair->second << ")\n";
      return r.member ? 0 : 1;
    }
    auto r = in_variety(a, k);
    std::cout << "membership in V(K): " << tri_name(r.verdict) << "\n";
    return r.verdict == Tri::Yes ? 0 : (r.verdict == Tri::No ? 1 : 2);
  }
  if (vsilist->parsed()) {
    VarietySpec k = load_spec(spec_path);
    auto sis = si_members(k, k.caps.size_max);
    std::cout << sis.size() << " subdirectly irreducible member(s)\n";
    for (size_t i = 0; i < sis.size(); ++i) {
      if (!g_opt.output.empty()) {
        save_algebra(sis[i], g_opt.output + "." + std::to_string(i) + ".json");
      }
      std::cout << "  size " << sis[i].size() << "\n";
    }
    if (k.mode == ClassMode::Quasivariety)
      std::cout << "note: relatively SI members are enumerated among subalgebras of the "
                   "generators\n";
    return 0;
  }
  if (vpresent->parsed()) {
    VarietySpec k = load_spec(spec_path);
    auto [rank, rels] = parse_presentation(k.signature(), text_or_file(pres_arg));
    FinitePresentation pres{rank, rels};
    auto p = finitely_presented(k, pres);
    if (g_opt.json || !g_opt.output.empty())
      emit_algebra(p.algebra);
    else
      std::cout << "presented algebra: " << p.algebra.size() << " elements (from F("
                << rank << ") with " << p.free.size() << ")\n";
    return 0;
  }
  if (vunify->parsed()) {
    VarietySpec k = load_spec(spec_path);
    auto r = unifiable(load_algebra(alg_a), k);
    std::cout << "unifiable: " << tri_name(r.verdict) << "\n";
    if (r.unifier) {
      std::cout << "  unifier into F(" << r.rank << "): [";
      for (size_t i = 0; i < r.unifier->map.size(); ++i)
        std::cout << (i ? " " : "") << r.unifier->map[i];
      std::cout << "]\n";
    }
    return r.verdict == Tri::Yes ? 0 : (r.verdict == Tri::No ? 1 : 2);
  }
  if (vinqf->parsed()) {
    VarietySpec k = load_spec(spec_path);
    auto r = in_qf(load_algebra(alg_a), k, k.caps.rank_max);
    if (g_opt.json)
      emit(in_qf_to_json(r));
    else
      std::cout << "membership in Q(F): " << tri_name(r.verdict) << "\n";
    return r.verdict == Tri::Yes ? 0 : (r.verdict == Tri::No ? 1 : 2);
  }

  // catalog group
  for (CLI::App* c : named_cmds)
    if (c->parsed()) {
      emit_algebra(catalog_by_name(c->get_name()));
      return 0;
    }
  if (csl->parsed()) {
    emit_algebra(s_l(l_arg));
    return 0;
  }
  if (cplev->parsed() || cpchain->parsed() || cpanti->parsed()) {
    Poset p = cplev->parsed() ? lev_poset(n_arg)
                              : (cpchain->parsed() ? chain_poset(n_arg) : antichain_poset(n_arg));
    emit(poset_to_json(p));
    return 0;
  }
  if (cupset->parsed()) {
    emit_algebra(upset_heyting(load_poset(alg_a)));
    return 0;
  }
  if (ccomplex->parsed()) {
    emit_algebra(complex_closure(load_poset(alg_a)));
    return 0;
  }
  if (copen->parsed()) {
    emit_algebra(open_heyting(load_algebra(alg_a)));
    return 0;
  }
  if (cclassify->parsed()) {
    emit(kind_report_to_json(classify(load_algebra(alg_a))));
    return 0;
  }

  // asc group
  if (acheck->parsed()) return report_verdict(asc_check(load_spec(spec_path)));
  if (ascheck->parsed()) {
    VarietySpec k = load_spec(spec_path);
    Verdict vs = sc_check(k);
    if (with_asc) {
      Verdict va = asc_check(k);
      std::cout << "asc_check: " << status_name(va.status) << "\n";
      // SC holds exactly when both ASC and PSC do
      const char* psc = "undetermined";
      if (vs.status == Status::Holds)
        psc = "holds";
      else if (vs.status == Status::Fails && va.status == Status::Holds)
        psc = "fails (a passive non-derivable quasi-identity exists)";
      std::cout << "derived: SC = ASC and PSC; here PSC " << psc << "\n";
    }
    return report_verdict(vs);
  }
  if (aclassify->parsed()) {
    VarietySpec k = load_spec(spec_path);
    QuasiIdentity q = parse_quasi_identity(k.signature(), text_or_file(qi_arg));
    QiClassification c = classify_qi(q, k);
    if (g_opt.json)
      emit(qi_classification_to_json(c));
    else {
      std::cout << qi_kind_name(c.kind);
      if (c.kind == QiClassification::Active && c.explored_rank >= 0)
        std::cout << " (holds up to rank " << c.explored_rank << ")";
      if (c.kind == QiClassification::NotAdmissible)
        std::cout << " (refuted in F(" << c.refuted_rank << "))";
      if (c.capped) std::cout << " [capped]";
      std::cout << "\n";
    }
    switch (c.kind) {
      case QiClassification::Valid:
      case QiClassification::Passive: return 0;
      case QiClassification::Active: return c.capped ? 2 : 0;
      default: return 1;
    }
  }
  if (aascc->parsed())
    return report_verdict(ascc_membership(load_algebra(alg_a), load_spec(spec_path)));
  if (asplit->parsed()) {
    SplittingReport r = mckinsey_splitting(load_spec(spec_path), with_asc);
    if (g_opt.json)
      emit(splitting_to_json(r));
    else {
      std::cout << "mckinsey identity: " << (r.mckinsey_holds ? "holds" : "fails") << "\n";
      std::cout << "S_2 in the variety: " << (r.s2_present ? "yes" : "no") << "\n";
      std::cout << "splitting biconditional: " << (r.biconditional_ok ? "ok" : "VIOLATED")
                << "\n";
      if (r.derived_sc) std::cout << r.derived_sc.value() << "\n";
    }
    return r.biconditional_ok ? 0 : 1;
  }
  if (afree->parsed()) {
    VarietySpec ku = load_spec(spec_u), kw = load_spec(spec_w);
    return report_verdict(free_decomposition_check(ku, kw, rank_arg));
  }
  if (anonembed->parsed()) {
    Caps caps;
    apply_caps(caps);
    return report_verdict(non_embedding_suite(name_arg, caps));
  }

  // verify
  if (verify->parsed()) {
    Verdict v = verdict_from_json(read_file(verdict_path));
    std::string why;
    if (verify_verdict(v, &why)) {
      std::cout << "all certificates re-verified (" << v.certificates.size() << ")\n";
      return 0;
    }
    std::cout << "verification failed: " << why << "\n";
    return 1;
  }
  return kExitUsage;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CapExceeded& e) {
    std::cerr << "INCONCLUSIVE: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
