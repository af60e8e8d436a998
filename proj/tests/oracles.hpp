#pragma once

// Test-side oracles, kept independent of the library search kernels: plain
// exhaustive enumeration with its own table walking.

#include <algorithm>
#include <vector>

#include "asck/algebra.hpp"
#include "asck/congruence.hpp"

namespace oracle {

// Direct table walk, written independently of asck::verify_hom.
inline bool is_hom(const asck::FiniteAlgebra& A, const asck::FiniteAlgebra& B,
                   const std::vector<int32_t>& map) {
  const asck::Signature& sig = A.signature();
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    long total = 1;
    for (int i = 0; i < k; ++i) total *= A.size();
    for (long idx = 0; idx < total; ++idx) {
      long v = idx;
      std::vector<int> args(k), bargs(k);
      for (int i = k - 1; i >= 0; --i) {
        args[i] = static_cast<int>(v % A.size());
        v /= A.size();
      }
      for (int i = 0; i < k; ++i) bargs[i] = map[args[i]];
      if (map[A.apply(op, args.data())] != B.apply(op, bargs.data())) return false;
    }
  }
  return true;
}

// All |B|^|A| maps, filtered.
inline std::vector<std::vector<int32_t>> all_homs(const asck::FiniteAlgebra& A,
                                                  const asck::FiniteAlgebra& B) {
  std::vector<std::vector<int32_t>> out;
  const int n = A.size(), m = B.size();
  std::vector<int32_t> map(n, 0);
  for (;;) {
    if (is_hom(A, B, map)) out.push_back(map);
    int i = n - 1;
    while (i >= 0 && map[i] == m - 1) map[i--] = 0;
    if (i < 0) break;
    ++map[i];
  }
  return out;
}

// All set partitions of {0..n-1} as canonical label arrays.
inline void partitions_rec(int i, int n, int blocks, std::vector<int32_t>& label,
                           std::vector<std::vector<int32_t>>& out) {
  if (i == n) {
    out.push_back(label);
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    label[i] = b;
    partitions_rec(i + 1, n, std::max(blocks, b + 1), label, out);
  }
}

inline std::vector<std::vector<int32_t>> all_partitions(int n) {
  std::vector<std::vector<int32_t>> out;
  std::vector<int32_t> label(n, 0);
  partitions_rec(0, n, 0, label, out);
  return out;
}

inline bool partition_compatible(const asck::FiniteAlgebra& A,
                                 const std::vector<int32_t>& label) {
  const asck::Signature& sig = A.signature();
  for (int op = 0; op < sig.num_ops(); ++op) {
    const int k = sig.arity(op);
    if (k == 0) continue;
    long total = 1;
    for (int i = 0; i < k; ++i) total *= A.size();
    for (long i1 = 0; i1 < total; ++i1)
      for (long i2 = 0; i2 < total; ++i2) {
        std::vector<int> a1(k), a2(k);
        long v1 = i1, v2 = i2;
        bool related = true;
        for (int i = k - 1; i >= 0; --i) {
          a1[i] = static_cast<int>(v1 % A.size());
          a2[i] = static_cast<int>(v2 % A.size());
          v1 /= A.size();
          v2 /= A.size();
        }
        for (int i = 0; i < k; ++i) related &= label[a1[i]] == label[a2[i]];
        if (related && label[A.apply(op, a1.data())] != label[A.apply(op, a2.data())])
          return false;
      }
  }
  return true;
}

// All congruences by brute-force partition enumeration (n <= 6 or so).
inline std::vector<asck::Congruence> all_congruences_brute(const asck::FiniteAlgebra& A) {
  std::vector<asck::Congruence> out;
  for (const auto& label : all_partitions(A.size()))
    if (partition_compatible(A, label)) out.push_back(asck::Congruence::from_labels(label));
  return out;
}

}  // namespace oracle
