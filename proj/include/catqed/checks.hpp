#ifndef CATQED_CHECKS_HPP
#define CATQED_CHECKS_HPP

#include <string>
#include <vector>

#include "catqed/state.hpp"

// Cross-module oracle suite: the circuit against the printed conditional
// states, the three entropy routes against each other, and the two Wigner
// routes against each other plus the number-basis backend.

namespace catqed {

struct CheckResult {
    std::string name;
    bool pass;
    double worst;  // largest deviation (or the violating value)
    double bound;
    std::string note;
};

enum class CheckLevel { fast, full };

std::vector<CheckResult> run_checks(CheckLevel level, int threads = 1);

// Fock-backend entropy of one mode of a conditional state.
double fock_entropy(const SuperState& conditional, int mode);

}  // namespace catqed

#endif
