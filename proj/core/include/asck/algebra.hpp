#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asck/signature.hpp"

namespace asck {

// Evaluation interface shared by table-backed algebras and tuple-backed
// subproduct views. Element universes are always {0..size-1}.
class AlgebraOps {
 public:
  virtual ~AlgebraOps() = default;
  virtual const Signature& signature() const = 0;
  virtual int size() const = 0;
  virtual int apply(int op, const int* args) const = 0;

  int apply(int op, std::span<const int> args) const { return apply(op, args.data()); }
};

// Finite algebra with fully materialized operation tables. Tables are flat
// row-major arrays: for an arity-k symbol, entry for (a_0,..,a_{k-1}) sits at
// ((a_0*n + a_1)*n + ...)*n + a_{k-1}.
class FiniteAlgebra final : public AlgebraOps {
 public:
  FiniteAlgebra() = default;
  FiniteAlgebra(Signature sig, int size, std::vector<std::vector<int32_t>> tables,
                std::string name = "");

  static FiniteAlgebra trivial(Signature sig, std::string name = "trivial");

  const Signature& signature() const override { return sig_; }
  int size() const override { return size_; }
  int apply(int op, const int* args) const override;

  int apply0(int op) const { return tables_[op][0]; }
  int apply1(int op, int a) const { return tables_[op][a]; }
  int apply2(int op, int a, int b) const {
    return tables_[op][static_cast<size_t>(a) * size_ + b];
  }

  const std::vector<int32_t>& table(int op) const { return tables_[op]; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  // Throws ParseError when a table has the wrong length or an entry is out
  // of range.
  void validate() const;

  // Deterministic sort key: tables serialized as bytes, signature included.
  std::string table_bytes() const;

  bool same_tables(const FiniteAlgebra& other) const;

 private:
  Signature sig_;
  int size_ = 1;
  std::vector<std::vector<int32_t>> tables_;
  std::string name_;
};

}  // namespace asck
