#include "nbldpc/counters.hpp"

namespace nbldpc {

std::string_view block_name(Block b) {
  switch (b) {
    case Block::kPermutation: return "permutation";
    case Block::kFft: return "fft";
    case Block::kCnpProduct: return "cnp_product";
    case Block::kInverseFft: return "inverse_fft";
    case Block::kDepermutation: return "depermutation";
    case Block::kVnp: return "vnp";
    case Block::kFbFirstEdge: return "fb_first_edge";
    case Block::kFbRemainingEdges: return "fb_remaining_edges";
    case Block::kBetaFirstLastEdge: return "beta_first_last_edge";
    case Block::kBetaRemainingEdges: return "beta_remaining_edges";
    case Block::kMinMaxVnp: return "vnp";
    case Block::kFixedRenormalization: return "fixed_renormalization";
    case Block::kDecision: return "decision";
    case Block::kCount: break;
  }
  return "unknown";
}

}  // namespace nbldpc
