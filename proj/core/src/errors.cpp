#include "bopgraph/errors.hpp"

#include <iostream>

namespace bopgraph {

WarningSink stderr_warnings() {
  return [](std::string_view message) {
    std::cerr << "warning: " << message << '\n';
  };
}

}  // namespace bopgraph
