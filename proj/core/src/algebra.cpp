#include "asck/algebra.hpp"

#include <cstring>

namespace asck {

FiniteAlgebra::FiniteAlgebra(Signature sig, int size,
                             std::vector<std::vector<int32_t>> tables, std::string name)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), name_(std::move(name)) {
  validate();
}

FiniteAlgebra FiniteAlgebra::trivial(Signature sig, std::string name) {
  std::vector<std::vector<int32_t>> tables;
  for (const auto& op : sig.ops()) {
    size_t len = 1;
    for (int i = 0; i < op.arity; ++i) len *= 1;
    tables.emplace_back(len, 0);
  }
  return FiniteAlgebra(std::move(sig), 1, std::move(tables), std::move(name));
}

int FiniteAlgebra::apply(int op, const int* args) const {
  const int k = sig_.arity(op);
  size_t idx = 0;
  for (int i = 0; i < k; ++i) idx = idx * size_ + args[i];
  return tables_[op][idx];
}

void FiniteAlgebra::validate() const {
  if (size_ <= 0) throw ParseError("algebra size must be positive");
  if (tables_.size() != static_cast<size_t>(sig_.num_ops()))
    throw ParseError("table count does not match signature");
  for (int op = 0; op < sig_.num_ops(); ++op) {
    size_t want = 1;
    for (int i = 0; i < sig_.arity(op); ++i) want *= static_cast<size_t>(size_);
    if (tables_[op].size() != want)
      throw ParseError("table for " + sig_.name(op) + " has wrong length");
    for (int32_t v : tables_[op])
      if (v < 0 || v >= size_)
        throw ParseError("table entry out of range for " + sig_.name(op));
  }
}

std::string FiniteAlgebra::table_bytes() const {
  std::string out;
  for (const auto& op : sig_.ops()) {
    out += op.name;
    out += char(op.arity);
  }
  for (const auto& t : tables_) {
    size_t at = out.size();
    out.resize(at + t.size() * sizeof(int32_t));
    std::memcpy(out.data() + at, t.data(), t.size() * sizeof(int32_t));
  }
  return out;
}

bool FiniteAlgebra::same_tables(const FiniteAlgebra& other) const {
  return sig_ == other.sig_ && size_ == other.size_ && tables_ == other.tables_;
}

}  // namespace asck
