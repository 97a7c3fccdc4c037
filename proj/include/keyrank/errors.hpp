#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace keyrank {

enum class ErrorKind {
  Config,        // bad run configuration, unknown prompt id
  Data,          // malformed dataset, catalog, or pre-tagged input
  Contract,      // violated internal contract (alignment, non-finite score)
  Connectivity,  // transport failure talking to a scorer server
  Protocol,      // server reply violates the wire contract
  Remote,        // server reported an error
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Process exit code the CLI uses for this class of failure.
  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Config:
        return 2;
      case ErrorKind::Connectivity:
      case ErrorKind::Protocol:
      case ErrorKind::Remote:
        return 3;
      default:
        return 4;
    }
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace keyrank
