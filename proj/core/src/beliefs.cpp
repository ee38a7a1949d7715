#include "patrol/beliefs.hpp"

#include <stdexcept>

namespace patrol {

BeliefVector fuse_vectors(std::span<const Belief> lhs, std::span<const Belief> rhs) {
  if (lhs.size() != rhs.size()) {
    throw std::logic_error("fuse_vectors: belief vectors differ in length");
  }
  BeliefVector out(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = fuse(lhs[i], rhs[i]);
  return out;
}

std::string_view to_string(Belief b) noexcept {
  switch (b) {
    case Belief::False:
      return "0";
    case Belief::Uncertain:
      return "0.5";
    case Belief::True:
      return "1";
  }
  return "?";
}

}  // namespace patrol
