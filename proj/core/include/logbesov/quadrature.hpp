#pragma once

#include <vector>

namespace logbesov {

struct GaussRule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre rule with n nodes (Newton iteration on P_n); cached per n.
const GaussRule& gauss_legendre(int n);

}  // namespace logbesov
