#ifndef PWD_ERROR_HPP
#define PWD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pwd {

/// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  invalid_argument,  // precondition or configuration violated
  domain,            // input outside the mathematical domain of an operation
  singular,          // evaluation hits a pole or kernel singularity
  numerical,         // non-finite values or loss of accuracy
  io,                // file or format problems
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, const std::string& what,
                    ErrorKind kind = ErrorKind::invalid_argument) {
  if (!condition) throw Error(kind, what);
}

}  // namespace pwd

#endif  // PWD_ERROR_HPP
