#pragma once

#include <stdexcept>
#include <string>

namespace lbroots {

enum class errc {
    pole,
    domain,
    invalid_argument,
    divergence,
    no_convergence,
    overflow,
    derivative_underflow,
    basin_escape,
    boundary_too_close,
    phase_jump,
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::pole: return "pole";
    case errc::domain: return "domain";
    case errc::invalid_argument: return "invalid-argument";
    case errc::divergence: return "divergence";
    case errc::no_convergence: return "no-convergence";
    case errc::overflow: return "overflow";
    case errc::derivative_underflow: return "derivative-underflow";
    case errc::basin_escape: return "basin-escape";
    case errc::boundary_too_close: return "boundary-too-close";
    case errc::phase_jump: return "phase-jump";
    }
    return "unknown";
}

class solver_error : public std::runtime_error {
public:
    solver_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what)
{
    throw solver_error(code, what);
}

} // namespace lbroots
