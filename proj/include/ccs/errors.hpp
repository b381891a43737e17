#ifndef CCS_ERRORS_HPP
#define CCS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text.
struct SyntaxError : Error {
  SyntaxError(int line, int column, std::string expected_, std::string found_)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
              ": expected " + expected_ + ", found " + found_),
        line(line), column(column), expected(std::move(expected_)), found(std::move(found_)) {}
  int line;
  int column;
  std::string expected;
  std::string found;
};

// A relabeling clause that does not denote a function (duplicate source name).
struct UnboundConstructError : Error {
  using Error::Error;
};

// An operation that requires a closed term was given one with free variables.
struct OpenTermError : Error {
  using Error::Error;
};

// Substituting an open value under a binder that would capture one of its free names.
struct CaptureError : Error {
  using Error::Error;
};

// rec-unfolding exceeded the budget without reaching a prefix (e.g. rec A. A).
struct UnguardedRecursionError : Error {
  using Error::Error;
};

// State-space exploration hit the state budget; the process may be infinite-state.
struct StateBudgetError : Error {
  StateBudgetError(std::size_t visited_, std::vector<std::string> frontier_sample_)
      : Error("state budget exceeded after " + std::to_string(visited_) + " states"),
        visited(visited_), frontier_sample(std::move(frontier_sample_)) {}
  std::size_t visited;
  std::vector<std::string> frontier_sample;
};

// Trace search exceeded its state budget.
struct TraceBudgetError : Error {
  using Error::Error;
};

struct NotVisibleError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// A theorem hypothesis check failed; `check` names the failing clause.
struct HypothesisError : Error {
  explicit HypothesisError(std::string check_)
      : Error("hypothesis failed: " + check_), check(std::move(check_)) {}
  std::string check;
};

// Definition-file problems: undefined agent, mutual recursion, duplicates.
struct DefinitionError : Error {
  using Error::Error;
};

}  // namespace ccs

#endif
