#include "cyclex/kernels.hpp"

namespace cyclex::serial {

void project_blocks(const Family& family, std::span<const Vector> in, std::span<Vector> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = project(family[i], in[i]);
}

void project_batch(const ConvexSet& set, std::span<const Vector> in, std::span<Vector> out) {
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = project(set, in[k]);
}

}  // namespace cyclex::serial
