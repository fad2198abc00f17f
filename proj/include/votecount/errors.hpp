#ifndef VOTECOUNT_ERRORS_HPP
#define VOTECOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace votecount {

/// The sign test has no rejection region at this (n, alpha): even
/// P(X <= 0 | Bin(n, 1/2)) exceeds the one-sided level.
class DegenerateTestError : public std::domain_error {
 public:
  DegenerateTestError(int n, double alpha_one_sided)
      : std::domain_error("no sign-test critical value exists at n = " +
                          std::to_string(n) + ", one-sided alpha = " +
                          std::to_string(alpha_one_sided)) {}
};

}  // namespace votecount

#endif
