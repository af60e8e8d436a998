#include "asck/signature.hpp"

#include <algorithm>

namespace asck {

Signature::Signature(std::vector<OpSym> ops) : ops_(std::move(ops)) {
  for (size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].arity < 0) throw ParseError("negative arity for op " + ops_[i].name);
    if (ops_[i].name.empty()) throw ParseError("empty operation name");
    for (size_t j = 0; j < i; ++j)
      if (ops_[j].name == ops_[i].name)
        throw ParseError("duplicate operation name " + ops_[i].name);
  }
}

int Signature::index_of(std::string_view name) const {
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& o : ops_) m = std::max(m, o.arity);
  return m;
}

std::vector<int> Signature::constants() const {
  std::vector<int> out;
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].arity == 0) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace asck
