#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biderive/scalar.hpp"

namespace biderive {

enum class MonomialOrder { Degrevlex, Lex };

inline std::string order_name(MonomialOrder o) {
  return o == MonomialOrder::Degrevlex ? "degrevlex" : "lex";
}

/// An ordered list of variable names together with a monomial order.
/// Immutable after creation; polynomials keep a shared handle to theirs.
class Ambient {
 public:
  static std::shared_ptr<const Ambient> make(
      std::vector<std::string> vars,
      MonomialOrder order = MonomialOrder::Degrevlex) {
    auto a = std::shared_ptr<Ambient>(new Ambient);
    a->vars_ = std::move(vars);
    a->order_ = order;
    for (std::size_t i = 0; i < a->vars_.size(); ++i) {
      const std::string& v = a->vars_[i];
      if (v.empty()) throw error("empty variable name");
      if (a->index_.count(v)) throw error("duplicate variable name: " + v);
      a->index_[v] = i;
    }
    return a;
  }

  std::size_t size() const { return vars_.size(); }
  const std::string& var(std::size_t i) const { return vars_[i]; }
  const std::vector<std::string>& vars() const { return vars_; }
  MonomialOrder order() const { return order_; }

  std::optional<std::size_t> index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_or_throw(std::string_view name) const {
    auto i = index(name);
    if (!i) throw error("unknown variable: " + std::string(name));
    return *i;
  }

  bool same(const Ambient& other) const {
    return order_ == other.order_ && vars_ == other.vars_;
  }

 private:
  Ambient() = default;
  std::vector<std::string> vars_;
  MonomialOrder order_ = MonomialOrder::Degrevlex;
  std::map<std::string, std::size_t> index_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

inline void require_same_ambient(const AmbientPtr& a, const AmbientPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same(*b)) throw error("ambient mismatch");
}

}  // namespace biderive
