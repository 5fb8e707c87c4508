#include <cstdio>

#include "lbroots/lbroots.hpp"

using namespace lbroots;

int main()
{
    const trinomial_spec sp{3.0, 7.0, 3.0, 7.0};
    const root_field f = trinomial_roots(sp);
    std::printf("x^7 + 3x^3 + 7 = 0\n");
    for (const auto& r : f.roots)
        std::printf("  %-20s % .15f %+.15fi\n", to_string(r.branch).c_str(), r.z.real(), r.z.imag());

    std::printf("x^5 - x + 0.1 = 0 (hypergeometric form)\n");
    for (const cplx& z : quintic_bring_jerrard(0.1))
        std::printf("  % .15f %+.15fi\n", z.real(), z.imag());
}
