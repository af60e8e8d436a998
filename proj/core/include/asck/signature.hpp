#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asck/common.hpp"

namespace asck {

struct OpSym {
  std::string name;
  int arity = 0;
  bool operator==(const OpSym&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSym> ops);

  int num_ops() const { return static_cast<int>(ops_.size()); }
  int arity(int op) const { return ops_[op].arity; }
  const std::string& name(int op) const { return ops_[op].name; }
  const std::vector<OpSym>& ops() const { return ops_; }

  // -1 when the symbol is not in the signature.
  int index_of(std::string_view name) const;
  int max_arity() const;
  std::vector<int> constants() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<OpSym> ops_;
};

}  // namespace asck
