// Scalar reference backend. Built with -ffp-contract=off; fused operations
// appear only where the shared kernel bodies request them explicitly.

#include "kernels_impl.hpp"

namespace igb::kernels {

namespace detail {

extern const KernelTable scalar_table;
const KernelTable scalar_table = {
    &normal_fill_impl<ScalarVec>, &affine_batch_impl<ScalarVec>,
    &relu_impl<ScalarVec>,        &srelu_impl<ScalarVec>,
    &tanh_impl<ScalarVec>,
};

} // namespace detail

} // namespace igb::kernels
