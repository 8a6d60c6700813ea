#ifndef NETCON_ERRORS_HPP
#define NETCON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netcon {

// First-order system is only well posed when alpha * lambda < 1.
class SpectralConditionViolated : public std::runtime_error {
public:
    SpectralConditionViolated(double alpha, double lambda)
        : std::runtime_error("spectral condition violated: alpha * lambda = " +
                             std::to_string(alpha * lambda) + " >= 1 (alpha = " +
                             std::to_string(alpha) + ", lambda = " + std::to_string(lambda) + ")"),
          alpha(alpha),
          lambda(lambda) {}

    double alpha;
    double lambda;
};

// Unreachable when the spectral condition holds; kept as an internal guard.
class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

// Equality-constrained problem whose reduced Hessian is not negative definite.
class ReducedSystemNotConcave : public std::runtime_error {
public:
    explicit ReducedSystemNotConcave(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace netcon

#endif
