#pragma once

#include <optional>
#include <span>

#include "ldt/gf.hpp"

namespace ldt {

/// Answer to a query; std::nullopt stands for an erased entry.
using Response = std::optional<Elem>;

/// Query access to a function F_q^n -> F_q.
class QueryAccess {
 public:
  virtual ~QueryAccess() = default;
  virtual Response query(std::span<const Elem> x) = 0;
  virtual std::size_t arity() const = 0;
  virtual const FieldRef& field() const = 0;
};

}  // namespace ldt
