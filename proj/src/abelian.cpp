#include "serre/abelian.hpp"

#include <sstream>

namespace serre {

bool GroupInvariants::is_finite() const {
  if (field) return !field->is_rational() || dimension == 0;
  for (const auto& d : divisors)
    if (d == 0) return false;
  return true;
}

Integer GroupInvariants::order() const {
  if (!is_finite()) throw ContractViolation("order of an infinite group");
  Integer n = 1;
  if (field) {
    for (std::size_t i = 0; i < dimension; ++i) n *= field->p;
    return n;
  }
  for (const auto& d : divisors) n *= d;
  return n;
}

std::string GroupInvariants::describe() const {
  if (field) {
    if (dimension == 0) return "0";
    return field->name() + (dimension == 1 ? "" : "^" + std::to_string(dimension));
  }
  if (divisors.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (i) os << " + ";
    if (divisors[i] == 0)
      os << "Z";
    else
      os << "Z/" << divisors[i].get_str();
  }
  return os.str();
}

GroupInvariants invariants_of_orders(std::span<const Integer> orders) {
  IntMatrix d(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
  SmithForm f = smith(d);
  GroupInvariants g;
  for (const auto& x : f.diagonal())
    if (x != 1) g.divisors.push_back(x);
  return g;
}

}  // namespace serre
