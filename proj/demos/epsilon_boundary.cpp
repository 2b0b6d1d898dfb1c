// Walks through the boundary example: g = chi_[0,1] + (1-eps) chi_[1,2] has
// lower frame bound eps^2, and replacing g by h = chi_[0,2] moves the cross
// term exactly onto R = A, where the perturbed system stops being a frame.

#include "whframe/whframe.hpp"

#include <iostream>

using namespace whframe;

int main()
{
    const PiecewiseFn h = windows::double_indicator();
    for (const Rat& eps : {Rat(1, 4), Rat(1, 2), Rat(3, 4)}) {
        const PiecewiseFn g = windows::paper_eps(eps);
        const FrameBounds wb = walnut_bounds(GaborSystem{g, 1, 1});
        const FrameBounds zb = zak_frame_bounds(g);
        const Certificate c = certify_cross_term(g, h, 1, 1, wb.lower, wb.upper);
        std::cout << "eps = " << to_string(eps) << "\n"
                  << "  walnut bounds   [" << to_string(wb.lower) << ", " << to_string(wb.upper) << "]\n"
                  << "  zak bounds      [" << to_string(zb.lower) << ", " << to_string(zb.upper) << "]\n"
                  << "  cross-term R    " << to_string(c.value("R")) << "  (R - A = " << to_string(c.value("R_minus_A"))
                  << ")\n"
                  << "  verdict         " << to_string(c.verdict) << "\n";
    }

    const OracleReport rep = empirical_bounds(GaborSystem{h, 1, 1}, 200, 42);
    std::cout << "oracle on (chi_[0,2], 1, 1): rho_min = " << rep.rho_min << ", rho_max = " << rep.rho_max << "\n";
    return 0;
}
