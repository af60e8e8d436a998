#include "asck/decision.hpp"

#include <algorithm>

#include "asck/catalog.hpp"

namespace asck {

namespace {

struct FreeCache {
  VarietySpec K;
  std::vector<std::optional<FreeAlgebra>> slot;
  bool capped = false;
  long capped_at = 0;

  explicit FreeCache(const VarietySpec& k) : K(k), slot(k.caps.rank_max + 1) {}

  const FreeAlgebra* get(int rank) {
    if (rank >= static_cast<int>(slot.size())) slot.resize(rank + 1);
    if (!slot[rank]) {
      try {
        VarietySpec k2 = K;
        k2.caps.rank_max = std::max(k2.caps.rank_max, rank);
        slot[rank] = free_algebra(k2, rank);
      } catch (const CapExceeded& e) {
        capped = true;
        capped_at = e.explored;
        return nullptr;
      } catch (const PreconditionError&) {
        return nullptr;  // e.g. rank 0 without constants
      }
    }
    return &*slot[rank];
  }
};

int greatest_element(const FiniteAlgebra& A, int meet) {
  for (int t = 0; t < A.size(); ++t) {
    bool top = true;
    for (int x = 0; x < A.size() && top; ++x) top = A.apply2(meet, x, t) == x;
    if (top) return t;
  }
  return -1;
}

std::optional<std::pair<int, int>> top_join_reducible(const FiniteAlgebra& A, int meet,
                                                      int join) {
  int top = greatest_element(A, meet);
  if (top < 0) return std::nullopt;
  for (int a = 0; a < A.size(); ++a) {
    if (a == top) continue;
    for (int b = a; b < A.size(); ++b) {
      if (b == top) continue;
      if (A.apply2(join, a, b) == top) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

struct TopCertEnv {
  bool applicable = false;
  int meet = -1, join = -1;
  std::vector<int> validated_ranks;
  std::string reason;
};

// A constant interpreted as the least (resp. greatest) element of every
// generator. The refutation argument substitutes generators by the bottom
// constant and moves tops through homomorphisms, so both bounds must be
// named in the signature.
bool bound_constants_exist(const VarietySpec& K, int meet, int join) {
  const Signature& sig = K.signature();
  bool have_bot = false, have_top = false;
  for (int op : sig.constants()) {
    bool bot = true, top = true;
    for (const auto& g : K.generators) {
      int c = g->apply0(op);
      for (int x = 0; x < g->size(); ++x) {
        bot &= g->apply2(meet, c, x) == c;
        top &= g->apply2(join, c, x) == c;
      }
    }
    have_bot |= bot;
    have_top |= top;
  }
  return have_bot && have_top;
}

bool all_ops_monotone(const VarietySpec& K, int meet) {
  const Signature& sig = K.signature();
  for (const auto& gp : K.generators) {
    const FiniteAlgebra& B = *gp;
    auto leq = [&](int a, int b) { return B.apply2(meet, a, b) == a; };
    for (int op = 0; op < sig.num_ops(); ++op) {
      const int k = sig.arity(op);
      if (k == 0) continue;
      std::vector<int> tup(k, 0), tup2(k, 0);
      for (;;) {
        for (int pos = 0; pos < k; ++pos) {
          for (int y = 0; y < B.size(); ++y) {
            if (!leq(tup[pos], y)) continue;
            tup2 = tup;
            tup2[pos] = y;
            if (!leq(B.apply(op, tup.data()), B.apply(op, tup2.data()))) return false;
          }
        }
        int i = k - 1;
        while (i >= 0 && tup[i] == B.size() - 1) tup[i--] = 0;
        if (i < 0) break;
        ++tup[i];
      }
    }
  }
  return true;
}

TopCertEnv top_cert_env(const VarietySpec& K, FreeCache& cache) {
  TopCertEnv env;
  auto lp = lattice_operation_pair(K);
  if (!lp) {
    env.reason = "no lattice operation pair";
    return env;
  }
  env.meet = lp->first;
  env.join = lp->second;
  if (!all_ops_monotone(K, env.meet)) {
    env.reason = "a basic operation is not monotone";
    return env;
  }
  if (!bound_constants_exist(K, env.meet, env.join)) {
    env.reason = "the lattice bounds are not named constants";
    return env;
  }
  const FreeAlgebra* F0 = cache.get(0);
  if (!F0 || !F0->dense || F0->size() != 2) {
    env.reason = "F(0) is not the two-element bound pair";
    return env;
  }
  for (int k = 0; k <= std::min(2, K.caps.rank_max); ++k) {
    const FreeAlgebra* F = cache.get(k);
    if (!F || !F->dense) continue;
    if (greatest_element(*F->dense, env.meet) < 0 ||
        top_join_reducible(*F->dense, env.meet, env.join)) {
      env.reason = "free algebra top is missing or join-reducible";
      return env;
    }
    env.validated_ranks.push_back(k);
  }
  if (env.validated_ranks.empty()) {
    env.reason = "no free algebra available for validation";
    return env;
  }
  env.applicable = true;
  return env;
}

std::string alg_label(const FiniteAlgebra& a, int index) {
  if (!a.name().empty()) return a.name();
  return "SI#" + std::to_string(index) + " (size " + std::to_string(a.size()) + ")";
}

Homomorphism find_embedding(const FiniteAlgebra& S, const AlgebraOps& F, bool& capped) {
  HomQuery q;
  q.mode = HomMode::Injective;
  auto r = homs(S, F, q);
  if (r.status == HomSearchResult::Capped) capped = true;
  return r.found() ? r.homs.front() : Homomorphism{};
}

Verdict si_embedding_check(const VarietySpec& K, bool with_product_factor,
                           const std::string& procedure) {
  Verdict v;
  v.procedure = procedure;
  v.inputs = K;
  const Signature& sig = K.signature();
  if (sig.constants().empty())
    throw PreconditionError(procedure + " selects C = F(0) and needs constants");

  FreeCache cache(K);
  const FreeAlgebra* F0 = cache.get(0);
  if (!F0 || !F0->dense) throw PreconditionError("F(0) could not be materialized");
  const FiniteAlgebra C = *F0->dense;
  if (C.size() < 2 || !is_simple(C))
    throw PreconditionError("C = F(0) must be nontrivial and simple; refusing");

  std::vector<FiniteAlgebra> sis = si_members(K, K.caps.size_max);
  TopCertEnv env = top_cert_env(K, cache);

  v.citations.push_back("criterion.finite-si-embedding");
  v.citations.push_back("fact.si-subdirect-generation");
  v.citations.push_back("fact.locally-finite-sfmp");
  if (K.mode == ClassMode::Variety) v.citations.push_back("fact.jonsson-si-in-hs");
  if (K.mode == ClassMode::Quasivariety)
    v.notes.push_back("relatively SI members enumerated among subalgebras of the generators");
  v.notes.push_back("SFMP holds automatically: the class is generated by finitely many finite algebras");
  v.notes.push_back(std::to_string(sis.size()) + " subdirectly irreducible member(s) enumerated");

  bool any_fails = false, any_unknown = false;

  for (size_t i = 0; i < sis.size(); ++i) {
    const FiniteAlgebra& S = sis[i];
    std::string label = alg_label(S, static_cast<int>(i));
    bool resolved = false;

    ProductAlgebra SxC;
    if (with_product_factor) SxC = product2(S, C);

    bool search_capped = false;
    for (int k = 0; k <= K.caps.rank_max && !resolved; ++k) {
      if (k == 1 && env.applicable) {
        // cheap refutation before the costly ranks
        if (auto red = top_join_reducible(S, env.meet, env.join)) {
          TopJoinReducibleCert cert;
          cert.label = label + (with_product_factor
                                    ? " (and its product with C) cannot embed: top join-reducible"
                                    : " cannot embed: top join-reducible");
          cert.si = S;
          cert.a = red->first;
          cert.b = red->second;
          cert.validated_ranks = env.validated_ranks;
          v.certificates.push_back(std::move(cert));
          v.notes.push_back(label + ": FAILS (join-reducible top)");
          v.citations.push_back("cert.free-top-join-irreducible");
          v.citations.push_back("fact.cd-implies-fraser-horn");
          any_fails = true;
          resolved = true;
          break;
        }
      }
      const FreeAlgebra* F = cache.get(k);
      if (!F) continue;
      v.explored_rank = std::max(v.explored_rank, k);
      if (S.size() <= F->size()) {
        Homomorphism h = find_embedding(S, F->ops(), search_capped);
        if (!h.map.empty()) {
          v.certificates.push_back(
              EmbeddingCert{label + " into F(" + std::to_string(k) + ")", S, k, h.map, "free"});
          v.notes.push_back(label + ": embeds into F(" + std::to_string(k) + ")");
          resolved = true;
          break;
        }
      }
      if (with_product_factor && SxC.algebra.size() <= F->size()) {
        Homomorphism h = find_embedding(SxC.algebra, F->ops(), search_capped);
        if (!h.map.empty()) {
          v.certificates.push_back(EmbeddingCert{label + " x C into F(" + std::to_string(k) + ")",
                                                 SxC.algebra, k, h.map, "free"});
          v.notes.push_back(label + " x C: embeds into F(" + std::to_string(k) + ")");
          resolved = true;
          break;
        }
      }
    }

    if (!resolved && !with_product_factor) {
      // no homomorphism into F(0) refutes every embedding (F(0) is a retract)
      auto r = homs(S, C, {});
      if (r.exhausted_none()) {
        v.certificates.push_back(NoHomToRetractCert{label + " admits no homomorphism into F(0)",
                                                    S, C.size()});
        v.notes.push_back(label + ": FAILS (no homomorphism into F(0))");
        v.citations.push_back("cert.retract-f0");
        any_fails = true;
        resolved = true;
      }
    }

    if (!resolved) {
      any_unknown = true;
      std::string cap_note = cache.capped
                                 ? "free algebra size cap (explored " +
                                       std::to_string(cache.capped_at) + ")"
                                 : (search_capped ? "search node cap"
                                                  : "rank cap " + std::to_string(K.caps.rank_max));
      v.notes.push_back(label + ": INCONCLUSIVE, bounded by " + cap_note);
    }
  }

  for (const auto& opt : cache.slot)
    if (opt) v.free_sizes.push_back(opt->size());

  v.status = any_fails ? Status::Fails
                       : (any_unknown ? Status::Inconclusive : Status::Holds);
  return v;
}

// Certificate order within the SI loop puts the no-hom check after the rank
// ladder for sc_check; pull it forward instead so FAILS cases never build
// large free algebras.
Verdict sc_check_impl(const VarietySpec& K) {
  Verdict v;
  v.procedure = "sc_check";
  v.inputs = K;
  const Signature& sig = K.signature();
  if (sig.constants().empty())
    throw PreconditionError("sc_check selects C = F(0) and needs constants");

  FreeCache cache(K);
  const FreeAlgebra* F0 = cache.get(0);
  if (!F0 || !F0->dense) throw PreconditionError("F(0) could not be materialized");
  const FiniteAlgebra C = *F0->dense;
  if (C.size() < 2 || !is_simple(C))
    throw PreconditionError("C = F(0) must be nontrivial and simple; refusing");

  std::vector<FiniteAlgebra> sis = si_members(K, K.caps.size_max);
  TopCertEnv env = top_cert_env(K, cache);

  v.citations.push_back("criterion.finite-si-embedding-sc");
  v.citations.push_back("fact.locally-finite-sfmp");
  if (K.mode == ClassMode::Quasivariety)
    v.notes.push_back("relatively SI members enumerated among subalgebras of the generators");
  v.notes.push_back(std::to_string(sis.size()) + " subdirectly irreducible member(s) enumerated");

  bool any_fails = false, any_unknown = false;
  for (size_t i = 0; i < sis.size(); ++i) {
    const FiniteAlgebra& S = sis[i];
    std::string label = alg_label(S, static_cast<int>(i));
    bool resolved = false;

    auto r0 = homs(S, C, {});
    if (r0.exhausted_none()) {
      v.certificates.push_back(
          NoHomToRetractCert{label + " admits no homomorphism into F(0)", S, C.size()});
      v.notes.push_back(label + ": FAILS (no homomorphism into F(0))");
      v.citations.push_back("cert.retract-f0");
      any_fails = true;
      continue;
    }
    if (env.applicable) {
      if (auto red = top_join_reducible(S, env.meet, env.join)) {
        TopJoinReducibleCert cert;
        cert.label = label + " cannot embed: top join-reducible";
        cert.si = S;
        cert.a = red->first;
        cert.b = red->second;
        cert.validated_ranks = env.validated_ranks;
        v.certificates.push_back(std::move(cert));
        v.notes.push_back(label + ": FAILS (join-reducible top)");
        v.citations.push_back("cert.free-top-join-irreducible");
        any_fails = true;
        continue;
      }
    }
    bool search_capped = false;
    for (int k = 0; k <= K.caps.rank_max && !resolved; ++k) {
      const FreeAlgebra* F = cache.get(k);
      if (!F || S.size() > F->size()) continue;
      v.explored_rank = std::max(v.explored_rank, k);
      Homomorphism h = find_embedding(S, F->ops(), search_capped);
      if (!h.map.empty()) {
        v.certificates.push_back(
            EmbeddingCert{label + " into F(" + std::to_string(k) + ")", S, k, h.map, "free"});
        v.notes.push_back(label + ": embeds into F(" + std::to_string(k) + ")");
        resolved = true;
      }
    }
    if (!resolved) {
      any_unknown = true;
      v.notes.push_back(label + ": INCONCLUSIVE at rank cap " + std::to_string(K.caps.rank_max));
    }
  }

  for (const auto& opt : cache.slot)
    if (opt) v.free_sizes.push_back(opt->size());
  v.status = any_fails ? Status::Fails
                       : (any_unknown ? Status::Inconclusive : Status::Holds);
  return v;
}

}  // namespace

Verdict asc_check(const VarietySpec& K) { return si_embedding_check(K, true, "asc_check"); }

Verdict sc_check(const VarietySpec& K) { return sc_check_impl(K); }

Verdict ascc_membership(const FiniteAlgebra& A, const VarietySpec& K) {
  Verdict v;
  v.procedure = "ascc_membership";
  v.inputs = K;
  auto mem = in_quasivariety(A, K);
  if (!mem.member)
    throw PreconditionError("ascc_membership requires A in Q(K)");
  const Signature& sig = K.signature();
  if (sig.constants().empty())
    throw PreconditionError("ascc_membership selects C = F(0) and needs constants");

  FreeCache cache(K);
  const FreeAlgebra* F0 = cache.get(0);
  if (!F0 || !F0->dense) throw PreconditionError("F(0) could not be materialized");
  const FiniteAlgebra C = *F0->dense;

  ProductAlgebra AxC = product2(A, C);
  v.citations.push_back("fact.asc-core-product-test");

  InQfResult r = in_qf(AxC.algebra, K, K.caps.rank_max);
  v.free_sizes = r.free_sizes;
  v.explored_rank = r.max_rank;
  if (r.verdict == Tri::Yes) {
    v.status = Status::Holds;
    v.certificates.push_back(SeparationCert{"A x C separates into free algebras",
                                            AxC.algebra, r.family});
    return v;
  }

  TopCertEnv env = top_cert_env(K, cache);
  if (env.applicable && A.size() >= 2) {
    CongruenceLattice lat = all_congruences(A);
    std::vector<char> bad(lat.elems.size(), 0);
    for (size_t t = 0; t < lat.elems.size(); ++t) {
      auto q = quotient(A, lat.elems[t]);
      bad[t] = q.algebra.size() >= 2 &&
               top_join_reducible(q.algebra, env.meet, env.join).has_value();
    }
    for (int x = 0; x < A.size(); ++x)
      for (int y = x + 1; y < A.size(); ++y) {
        bool obstructed = true;
        for (size_t t = 0; t < lat.elems.size() && obstructed; ++t)
          if (!lat.elems[t].same(x, y) && !bad[t]) obstructed = false;
        if (obstructed) {
          v.status = Status::Fails;
          v.certificates.push_back(AsccObstructionCert{A, x, y, env.validated_ranks});
          v.notes.push_back(
              "pair (" + std::to_string(x) + "," + std::to_string(y) +
              ") cannot be separated: every non-collapsing quotient has a join-reducible top");
          v.citations.push_back("cert.free-top-join-irreducible");
          v.citations.push_back("fact.cd-implies-fraser-horn");
          return v;
        }
      }
  }

  v.status = Status::Inconclusive;
  v.notes.push_back("separation incomplete at rank cap " + std::to_string(K.caps.rank_max));
  return v;
}

QiClassification classify_qi(const QuasiIdentity& q, const VarietySpec& K) {
  const Signature& sig = K.signature();
  q.validate(sig);
  QiClassification out;

  bool gens_ok = true;
  for (const auto& g : K.generators)
    if (!check_quasi_identity(*g, q).holds) {
      gens_ok = false;
      break;
    }
  if (gens_ok) {
    if (q.is_identity() || K.mode == ClassMode::Quasivariety) {
      out.kind = QiClassification::Valid;
      return out;
    }
    // variety mode with a proper premise: validity needs the SI members
    if (lattice_operation_pair(K)) {
      bool si_ok = true;
      for (const auto& s : si_members(K, K.caps.size_max))
        if (!check_quasi_identity(s, q).holds) {
          si_ok = false;
          break;
        }
      if (si_ok) {
        out.kind = QiClassification::Valid;
        out.notes.push_back("validity checked on the subdirectly irreducible members");
        return out;
      }
    } else {
      out.notes.push_back(
          "holds in all generators, but variety validity not established "
          "(no congruence-distributivity certificate)");
    }
  }

  // premise algebra at rank nvars
  std::optional<PresentedAlgebra> P;
  try {
    VarietySpec K2 = K;
    K2.caps.rank_max = std::max(K2.caps.rank_max, q.nvars);
    FinitePresentation pres{q.nvars, q.premise};
    P = finitely_presented(K2, pres);
    out.premise_algebra_size = P->algebra.size();
  } catch (const CapExceeded&) {
    out.capped = true;
    out.notes.push_back("premise algebra exceeds caps; unifiability undecided");
  }

  if (P) {
    UnifiabilityResult u = unifiable(P->algebra, K);
    if (u.verdict == Tri::No) {
      out.kind = QiClassification::Passive;
      // independent exhaustive recheck for small premise algebras
      if (P->algebra.size() <= 6 && !sig.constants().empty()) {
        FreeAlgebra F0 = free_algebra(K, 0);
        long total = 1;
        for (int i = 0; i < P->algebra.size(); ++i) total *= F0.size();
        long checked = 0;
        std::vector<int32_t> map(P->algebra.size(), 0);
        bool any_hom = false;
        for (long m = 0; m < total && !any_hom; ++m) {
          long v = m;
          for (int i = 0; i < P->algebra.size(); ++i) {
            map[i] = static_cast<int32_t>(v % F0.size());
            v /= F0.size();
          }
          ++checked;
          any_hom = verify_hom(P->algebra, F0.ops(), map);
        }
        if (any_hom) throw Error("non-unifiability recheck found a homomorphism (internal)");
        out.nonunifiability_maps_checked = checked;
      }
      return out;
    }
    if (u.verdict == Tri::Yes) out.unifier = u.unifier;
    if (u.verdict == Tri::Unknown) {
      out.capped = true;
      out.notes.push_back("unifiability search inconclusive");
    }
  }

  // refutation ladder over the free algebras
  for (int k = 0; k <= K.caps.rank_max; ++k) {
    FreeAlgebra F;
    try {
      F = free_algebra(K, k);
    } catch (const PreconditionError&) {
      continue;
    } catch (const CapExceeded&) {
      out.capped = true;
      break;
    }
    out.free_sizes.push_back(F.size());
    CheckResult r = check_quasi_identity(F.ops(), q, 20'000'000);
    if (!r.complete) {
      out.capped = true;
      break;
    }
    if (!r.holds) {
      out.kind = QiClassification::NotAdmissible;
      out.refuted_rank = k;
      out.refuting_assignment = r.witness;
      return out;
    }
    out.explored_rank = k;
  }
  out.kind = QiClassification::Active;
  return out;
}

SplittingReport mckinsey_splitting(const VarietySpec& K, bool with_asc) {
  const Signature& sig = K.signature();
  if (!(sig == modal_signature()))
    throw PreconditionError("mckinsey_splitting expects the closure-algebra signature");
  for (const auto& g : K.generators)
    if (g->size() > 1 && !is_closure_algebra(*g))
      throw PreconditionError("mckinsey_splitting requires closure algebras");

  SplittingReport rep;
  QuasiIdentity mck = parse_quasi_identity(
      sig, "(qi (vars 1) (prem) (concl (= (imp (box (dia v0)) (dia (box v0))) one)))");

  rep.mckinsey_holds = true;
  for (size_t g = 0; g < K.generators.size(); ++g) {
    CheckResult r = check_identity(*K.generators[g], mck);
    if (!r.holds) {
      rep.mckinsey_holds = false;
      rep.mckinsey_witness = std::make_pair(static_cast<int>(g), r.witness.at(0));
      break;
    }
  }

  // S_2 sits in V(K) iff S_2 turns up among the SI members (it is simple)
  rep.s2_present = false;
  FiniteAlgebra s2 = s_l(2);
  VarietySpec KV = K;
  KV.mode = ClassMode::Variety;
  for (const auto& s : si_members(KV, K.caps.size_max))
    if (s.size() == 4 && is_isomorphic(s, s2)) {
      rep.s2_present = true;
      break;
    }

  rep.biconditional_ok = rep.mckinsey_holds != rep.s2_present;
  if (!rep.biconditional_ok)
    rep.notes.push_back("splitting biconditional violated (internal inconsistency)");

  if (with_asc) {
    Verdict v = asc_check(K);
    rep.asc_status = v.status;
    if (v.status == Status::Holds) {
      rep.derived_sc = std::string("variety is ASC; it is SC iff the McKinsey identity holds: "
                                   "predicted SC = ") +
                       (rep.mckinsey_holds ? "yes" : "no");
    }
  }
  return rep;
}

Verdict free_decomposition_check(const VarietySpec& KU, const VarietySpec& KW, int rank) {
  Verdict v;
  v.procedure = "free_decomposition_check";
  v.inputs = KU;
  v.inputs_aux = KW;
  v.aux_rank = rank;

  for (const auto& g : KU.generators) {
    if (g->size() < 2) continue;
    AlgebraKindReport rep = classify(*g);
    if (!rep.closure || !rep.mckinsey)
      throw PreconditionError("K_U generators must be McKinsey closure algebras");
  }
  bool ku_nontrivial = false;
  for (const auto& g : KU.generators) ku_nontrivial |= g->size() > 1;
  if (!ku_nontrivial) throw PreconditionError("K_U must be nontrivial");
  for (const auto& g : KW.generators) {
    if (g->size() < 2) continue;
    AlgebraKindReport rep = classify(*g);
    if (!rep.closure || !rep.monadic)
      throw PreconditionError("K_W generators must be monadic algebras");
  }
  if (rank > KU.caps.rank_max || rank > KW.caps.rank_max)
    throw PreconditionError("rank exceeds rank_max cap");

  VarietySpec KV = KU;
  KV.mode = ClassMode::Variety;
  for (const auto& g : KW.generators) KV.generators.push_back(g);

  FreeAlgebra FV = free_algebra(KV, rank);
  FreeAlgebra FU = free_algebra(KU, rank);
  FreeAlgebra FW = free_algebra(KW, rank);
  if (!FV.dense || !FU.dense || !FW.dense)
    throw CapExceeded("free_decomposition_check needs materialized tables",
                      std::max({FV.size(), FU.size(), FW.size()}));
  v.free_sizes = {static_cast<long>(FU.size()), static_cast<long>(FW.size()),
                  static_cast<long>(FV.size())};
  v.explored_rank = rank;
  v.citations.push_back("prop.free-join-decomposition");

  Decomposition dec = direct_decomposition(*FW.dense);
  std::vector<const FiniteAlgebra*> gfactors;
  std::string factors_note = "F_W factors:";
  for (const auto& f : dec.factors) {
    factors_note += " " + std::to_string(f.size());
    if (f.size() > 2) gfactors.push_back(&f);
  }
  v.notes.push_back(factors_note);
  ProductAlgebra GW = product(KW.signature(), gfactors);
  ProductAlgebra expected = product2(*FU.dense, GW.algebra);
  expected.algebra.set_name("F_U(" + std::to_string(rank) + ")xG_W(" + std::to_string(rank) + ")");

  auto iso = is_isomorphic(expected.algebra, *FV.dense);
  if (iso) {
    v.status = Status::Holds;
    v.certificates.push_back(EmbeddingCert{"F_U x G_W onto F_V (bijective)", expected.algebra,
                                           rank, iso->map, "free-union"});
  } else {
    v.status = Status::Fails;
    v.notes.push_back("sizes " + std::to_string(expected.algebra.size()) + " vs " +
                      std::to_string(FV.size()));
  }
  return v;
}

Verdict non_embedding_suite(std::string_view name, Caps caps) {
  Verdict v;
  v.procedure = "non_embedding_suite";
  v.notes.push_back("suite: " + std::string(name));

  FiniteAlgebra S;
  VarietySpec K;
  K.caps = caps;
  if (name == "heyting-2sq") {
    S = upset_heyting(antichain_poset(2));
    S.set_name("2^2");
    K = make_variety({upset_heyting(lev_poset(2))}, ClassMode::Variety, caps);
    K.name = "V(fork upset algebra)";
  } else if (name == "closure-4sq") {
    S = product2(four(), four()).algebra;
    K = make_variety({complex_closure(lev_poset(2)), s_l(2)}, ClassMode::Variety, caps);
    K.name = "V(complex(Lev2), S2)";
  } else if (name == "heyting-2sq-sanity") {
    S = upset_heyting(antichain_poset(2));
    S.set_name("2^2");
    K = make_variety({upset_heyting(antichain_poset(1))}, ClassMode::Variety, caps);
    K.name = "V(2)";
  } else {
    throw PreconditionError("unknown non-embedding suite " + std::string(name));
  }
  v.inputs = K;

  bool any_incomplete = false;
  for (int k = 0; k <= caps.rank_max; ++k) {
    FreeAlgebra F;
    try {
      F = free_algebra(K, k);
    } catch (const PreconditionError&) {
      continue;
    } catch (const CapExceeded& e) {
      any_incomplete = true;
      v.free_sizes.push_back(e.explored);
      v.notes.push_back("rank " + std::to_string(k) + ": free algebra exceeds size cap, explored " +
                        std::to_string(e.explored) + " elements");
      continue;
    }
    v.free_sizes.push_back(F.size());
    if (S.size() > F.size()) {
      v.explored_rank = k;
      continue;
    }
    HomQuery q;
    q.mode = HomMode::Injective;
    auto r = homs(S, F.ops(), q);
    if (r.status == HomSearchResult::Capped) {
      any_incomplete = true;
      v.notes.push_back("rank " + std::to_string(k) + ": embedding search hit the node cap");
      continue;
    }
    if (r.found()) {
      v.status = Status::Fails;
      v.certificates.push_back(EmbeddingCert{
          S.name() + " into F(" + std::to_string(k) + ")", S, k, r.homs.front().map, "free"});
      v.notes.push_back("embedding found at rank " + std::to_string(k));
      return v;
    }
    v.explored_rank = k;
  }
  if (any_incomplete && v.explored_rank < caps.rank_max) {
    v.status = Status::Inconclusive;
  } else {
    v.status = Status::Holds;
    v.notes.push_back("no embedding up to rank " + std::to_string(v.explored_rank) +
                      " (exhaustive per rank; bounded evidence for the unbounded claim)");
  }
  return v;
}

// --- verification ------------------------------------------------------------

namespace {

bool fail_with(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool verify_embedding(const Verdict& v, const EmbeddingCert& c, std::string* why) {
  VarietySpec K = v.inputs;
  K.caps.rank_max = std::max(K.caps.rank_max, c.rank);
  if (c.target_kind == "free-union" && v.inputs_aux) {
    for (const auto& g : v.inputs_aux->generators) K.generators.push_back(g);
  }
  FreeAlgebra F = free_algebra(K, c.rank);
  if (static_cast<int>(c.map.size()) != c.source.size())
    return fail_with(why, "embedding map has wrong length");
  std::vector<char> seen(F.size(), 0);
  for (int32_t t : c.map) {
    if (t < 0 || t >= F.size()) return fail_with(why, "embedding image out of range");
    if (seen[t]) return fail_with(why, "embedding map not injective");
    seen[t] = 1;
  }
  if (!verify_hom(c.source, F.ops(), c.map))
    return fail_with(why, "embedding map is not a homomorphism");
  return true;
}

bool verify_no_hom(const Verdict& v, const NoHomToRetractCert& c, std::string* why) {
  FreeAlgebra F0 = free_algebra(v.inputs, 0);
  if (F0.size() != c.f0_size) return fail_with(why, "F(0) size changed");
  auto r = homs(c.source, F0.ops(), {});
  if (!r.exhausted_none()) return fail_with(why, "a homomorphism into F(0) exists after all");
  return true;
}

bool verify_top_cert_env(const Verdict& v, const std::vector<int>& ranks, int* meet, int* join,
                         std::string* why) {
  auto lp = lattice_operation_pair(v.inputs);
  if (!lp) return fail_with(why, "no lattice operation pair");
  if (!all_ops_monotone(v.inputs, lp->first))
    return fail_with(why, "operations are not monotone");
  if (!bound_constants_exist(v.inputs, lp->first, lp->second))
    return fail_with(why, "the lattice bounds are not named constants");
  VarietySpec K = v.inputs;
  for (int k : ranks) {
    K.caps.rank_max = std::max(K.caps.rank_max, k);
    FreeAlgebra F = free_algebra(K, k);
    if (!F.dense) return fail_with(why, "free algebra too large to validate");
    if (k == 0 && F.size() != 2) return fail_with(why, "F(0) is not two-element");
    if (greatest_element(*F.dense, lp->first) < 0 ||
        top_join_reducible(*F.dense, lp->first, lp->second))
      return fail_with(why, "free algebra top is missing or join-reducible");
  }
  *meet = lp->first;
  *join = lp->second;
  return true;
}

bool verify_top_join(const Verdict& v, const TopJoinReducibleCert& c, std::string* why) {
  int meet, join;
  if (!verify_top_cert_env(v, c.validated_ranks, &meet, &join, why)) return false;
  int top = greatest_element(c.si, meet);
  if (top < 0) return fail_with(why, "SI algebra has no greatest element");
  if (c.a == top || c.b == top) return fail_with(why, "witness elements must be below the top");
  if (c.si.apply2(join, c.a, c.b) != top)
    return fail_with(why, "witness join does not reach the top");
  return true;
}

bool verify_ascc_obstruction(const Verdict& v, const AsccObstructionCert& c, std::string* why) {
  int meet, join;
  if (!verify_top_cert_env(v, c.validated_ranks, &meet, &join, why)) return false;
  if (c.x == c.y) return fail_with(why, "witness pair must be distinct");
  CongruenceLattice lat = all_congruences(c.source);
  for (const auto& th : lat.elems) {
    if (th.same(c.x, c.y)) continue;
    auto q = quotient(c.source, th);
    if (q.algebra.size() < 2) return fail_with(why, "trivial quotient separates the pair");
    if (!top_join_reducible(q.algebra, meet, join))
      return fail_with(why, "a separating quotient has a join-irreducible top");
  }
  return true;
}

bool verify_separation(const Verdict& v, const SeparationCert& c, std::string* why) {
  const int n = c.source.size();
  std::vector<std::vector<int8_t>> sep(n, std::vector<int8_t>(n, 0));
  std::vector<std::optional<FreeAlgebra>> cache;
  for (const auto& s : c.seps) {
    if (s.rank >= static_cast<int>(cache.size())) cache.resize(s.rank + 1);
    if (!cache[s.rank]) {
      VarietySpec K = v.inputs;
      K.caps.rank_max = std::max(K.caps.rank_max, s.rank);
      cache[s.rank] = free_algebra(K, s.rank);
    }
    const FreeAlgebra& F = *cache[s.rank];
    if (!verify_hom(c.source, F.ops(), s.hom.map))
      return fail_with(why, "separating map is not a homomorphism");
    if (s.hom.map[s.a] == s.hom.map[s.b])
      return fail_with(why, "separating map does not separate its pair");
    sep[s.a][s.b] = sep[s.b][s.a] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!sep[a][b]) return fail_with(why, "a pair is left unseparated");
  return true;
}

}  // namespace

bool verify_verdict(const Verdict& v, std::string* why) {
  for (const auto& cert : v.certificates) {
    bool ok = std::visit(
        [&](const auto& c) -> bool {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, EmbeddingCert>) return verify_embedding(v, c, why);
          if constexpr (std::is_same_v<T, NoHomToRetractCert>) return verify_no_hom(v, c, why);
          if constexpr (std::is_same_v<T, TopJoinReducibleCert>) return verify_top_join(v, c, why);
          if constexpr (std::is_same_v<T, AsccObstructionCert>)
            return verify_ascc_obstruction(v, c, why);
          if constexpr (std::is_same_v<T, SeparationCert>) return verify_separation(v, c, why);
          return false;
        },
        cert);
    if (!ok) return false;
  }
  return true;
}

}  // namespace asck
