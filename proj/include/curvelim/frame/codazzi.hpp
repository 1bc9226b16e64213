#pragma once

#include "curvelim/frame/registry.hpp"

namespace curvelim::frame {

// Connection-coefficient table: H, h1, lam2..lam4, w{k}{i}{j} = omega_{ki}^j for k,i,j in 1..4,
// and the jets d{i}_lam{j}_1 = e_i(lambda_j), d{i}_H_1 = e_i(H).
VarTablePtr codazzi_symbols();

// Index families of the compatibility and Codazzi relations, the linear eliminations they imply,
// and the resulting connection table.
EquationRegistry build_codazzi_registry();

}  // namespace curvelim::frame
