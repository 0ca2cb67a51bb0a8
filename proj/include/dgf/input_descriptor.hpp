#pragma once

#include <stdexcept>
#include <string>

#include "dgf/types.hpp"

// Launch-state descriptor grammar shared by the command-line tool and tests:
//   fock:<k>
//   coherent:<re>,<im>
//   coherent:n=<mean>        (real beta = sqrt(mean))
//   dfock:<re>,<im>,<k>
//   cat:<re>,<im>[,<k>]
namespace dgf::cli {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, size_t position, std::string expected)
        : std::runtime_error(what), position_(position), expected_(std::move(expected)) {}
    size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

  private:
    size_t position_;
    std::string expected_;
};

enum class InputKind { fock, coherent, displaced_fock, cat };

struct InputDescriptor {
    InputKind kind = InputKind::fock;
    Complex amplitude{};  // beta (coherent / dfock) or alpha (cat)
    int fock_index = 0;
    std::string text;  // descriptor as parsed

    StateVector build(int dim) const;

    // Magnitude of the largest phase-space displacement in the launch state.
    double displacement_abs() const;

    // Basis size needed to hold the launch state plus a further displacement
    // by extra (e.g. g z for lattice propagation).
    int min_sites(double extra, double tail_tol = 1e-12) const;

    std::string label() const { return text; }
};

InputDescriptor parse_input_descriptor(const std::string& text);

}  // namespace dgf::cli
