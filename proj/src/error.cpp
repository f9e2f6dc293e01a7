#include "hydrocm/error.hpp"

namespace hydrocm {

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error([&] {
          std::string msg = "invalid topology";
          for (const auto& v : violations) msg += "\n  " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

}  // namespace hydrocm
