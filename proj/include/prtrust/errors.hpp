#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prtrust {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (bad JSON, missing field, wrong type, bad timestamp).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A well-formed snapshot that violates a domain invariant. Carries the
/// offending PR number and/or login when the violation is located there.
class ValidationError : public Error {
 public:
  ValidationError(std::string message, std::optional<std::int64_t> pr_number = std::nullopt,
                  std::string login = {})
      : Error(std::move(message)), pr_number_(pr_number), login_(std::move(login)) {}

  const std::optional<std::int64_t>& pr_number() const noexcept { return pr_number_; }
  const std::string& login() const noexcept { return login_; }

 private:
  std::optional<std::int64_t> pr_number_;
  std::string login_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownLoginError : public Error {
 public:
  explicit UnknownLoginError(const std::string& login)
      : Error("unknown login '" + login + "'"), login_(login) {}
  const std::string& login() const noexcept { return login_; }

 private:
  std::string login_;
};

class InsufficientStratumError : public Error {
 public:
  InsufficientStratumError(std::string stratum, std::size_t required, std::size_t available)
      : Error("insufficient " + stratum + " pull requests: need " + std::to_string(required) +
              ", have " + std::to_string(available) + " (short by " +
              std::to_string(required - available) + ")"),
        stratum_(std::move(stratum)),
        required_(required),
        available_(available) {}

  const std::string& stratum() const noexcept { return stratum_; }
  std::size_t required() const noexcept { return required_; }
  std::size_t available() const noexcept { return available_; }
  std::size_t shortfall() const noexcept { return required_ - available_; }

 private:
  std::string stratum_;
  std::size_t required_;
  std::size_t available_;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Network-side failures raised by ingest.

class NetworkError : public Error {
 public:
  using Error::Error;
};

class AuthError : public NetworkError {
 public:
  AuthError(std::string message, int status) : NetworkError(std::move(message)), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class NotFoundError : public NetworkError {
 public:
  NotFoundError(std::string message, std::string resource)
      : NetworkError(std::move(message)), resource_(std::move(resource)) {}
  const std::string& resource() const noexcept { return resource_; }

 private:
  std::string resource_;
};

/// Fetch aborted after some pull requests were already retrieved. The
/// responses for completed PRs stay in the cache, so rerunning with the same
/// cache directory resumes where this run stopped.
class PartialFetchError : public NetworkError {
 public:
  PartialFetchError(std::string message, std::vector<std::int64_t> completed)
      : NetworkError(std::move(message)), completed_(std::move(completed)) {}
  const std::vector<std::int64_t>& completed() const noexcept { return completed_; }

 private:
  std::vector<std::int64_t> completed_;
};

/// Rate limit exhausted with no way to wait it out (no token, or the reset
/// lies beyond the configured wait cap).
class RateLimitError : public PartialFetchError {
 public:
  RateLimitError(std::string message, std::int64_t reset_at, std::vector<std::int64_t> completed)
      : PartialFetchError(std::move(message), std::move(completed)), reset_at_(reset_at) {}
  /// Unix seconds at which the budget resets.
  std::int64_t reset_at() const noexcept { return reset_at_; }

 private:
  std::int64_t reset_at_;
};

}  // namespace prtrust
