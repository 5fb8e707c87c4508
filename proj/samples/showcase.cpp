// (1/2) sin z - 15 e^z + pi = 0 over a range of windings.
#include <cstdio>

#include "lbroots/lbroots.hpp"

using namespace lbroots;

int main()
{
    const equation eq({{0.5, term_function::sin()}, {-15.0, term_function::exp()}}, pi);
    const root_field f = solve_all(eq, -6, 6);
    for (const auto& r : f.roots)
        std::printf("%-22s % .14f %+.14fi  |f| = %.1e\n", to_string(r.branch).c_str(), r.z.real(), r.z.imag(),
                    r.residual);
    for (const auto& d : f.diagnostics)
        std::printf("%s\n", to_string(d).c_str());
}
