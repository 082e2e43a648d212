#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcif/tci.hpp"

namespace tcif {

struct CompiledTCI {
  TCI input;
  TCI output;
  int level = 1;
  std::string guard;
  std::map<Element, std::string> constants;  // carrier element -> fresh constant
};

// Pi_{n+1} -> Sigma_n, n >= 1.
CompiledTCI compile_pi_to_sigma(const TCI& t, int n);

// One ground instance: guard the quantified tail, drop the leading universal
// block and substitute `args` for its variables.
Formula relativize_instance(const Formula& phi, const std::vector<std::string>& args, const std::string& guard);

Structure model_restrict(const CompiledTCI& c, const Structure& m);
Structure model_expand(const CompiledTCI& c, const Structure& m);

struct BijectionCheck {
  std::size_t input_models = 0;
  std::size_t output_models = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && input_models == output_models; }
};

BijectionCheck verify_bijection(const CompiledTCI& c);

}  // namespace tcif
