#pragma once
#include <stdexcept>
#include <string>

namespace toro {

// Thrown when an internal invariant the algorithms guarantee by construction
// fails at runtime. Callers map this to the internal-consistency exit code.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace toro
