#include "patrol/rng.hpp"

namespace patrol {

static_assert(splitmix64(0) != splitmix64(1));

}  // namespace patrol
