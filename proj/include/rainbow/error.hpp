#ifndef RAINBOW_ERROR_HPP
#define RAINBOW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rainbow {

/// A precondition or type invariant was violated by the caller.
class constraint_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation is not defined for these parameters
/// (e.g. a construction that only exists for k >= 4).
class unsupported_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// [n] has no non-degenerate solutions, so rb([n], eq) = n + 1 by convention
/// and no rainbow-free construction is needed.
class no_solutions_error : public unsupported_error {
public:
  no_solutions_error(int n, int k)
      : unsupported_error("[" + std::to_string(n) + "] has no solutions for k=" + std::to_string(k) +
                          "; rb = n+1 = " + std::to_string(n + 1) + " by convention"),
        n_(n), k_(k) {}

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

private:
  int n_;
  int k_;
};

/// A closed-form formula was queried outside the range where it is proven.
class out_of_range_error : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Malformed coloring file or store contents.
class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace rainbow

#endif // RAINBOW_ERROR_HPP
