/**
 * @file error.hpp
 * @brief Exception type shared by every module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace adaptdet {

enum class ErrorKind {
    definiteness,           ///< matrix not positive definite
    rank,                   ///< rank-deficient or ill-conditioned subspace
    dimension,              ///< inconsistent sizes
    parameter,              ///< argument outside its admissible range
    geometry,               ///< requested signal geometry cannot be realized
    insufficient_training,  ///< fewer training vectors than channels
    infeasible,             ///< root equation has no solution
    domain,                 ///< distribution argument outside the support
    unsupported,            ///< detector has no analytic law
    insufficient_trials,    ///< Monte Carlo plan too small for the target PFA
    contract,               ///< caller-supplied function violates its contract
    io,                     ///< file or stream failure
    config,                 ///< malformed experiment configuration
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace adaptdet
