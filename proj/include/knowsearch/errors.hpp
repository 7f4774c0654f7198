#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace knowsearch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-supplied configuration or parameters. CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Bad input data. CLI exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

class MalformedRecord : public DataError {
 public:
  MalformedRecord(std::size_t line, const std::string& reason)
      : DataError("malformed record at line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class DuplicateId : public DataError {
 public:
  explicit DuplicateId(const std::string& id) : DataError("duplicate patent id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class DateOrderViolation : public DataError {
 public:
  explicit DateOrderViolation(const std::string& id)
      : DataError("priority_date after publication_date for " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class MissingCitations : public Error {
 public:
  explicit MissingCitations(const std::string& id)
      : Error("no forward citation count for " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

enum class TextField { Title, Abstract };

class NoElementsFound : public Error {
 public:
  explicit NoElementsFound(TextField which)
      : Error(which == TextField::Title ? "no knowledge elements found in title"
                                        : "no knowledge elements found in abstract"),
        which_(which) {}
  TextField which() const { return which_; }

 private:
  TextField which_;
};

// The focal patent has solution elements no prior document can ever cover.
class UncoverableSkes : public Error {
 public:
  explicit UncoverableSkes(std::vector<std::string> keys);
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

class NoStartNodes : public Error {
 public:
  NoStartNodes() : Error("none of the problem elements is a network node") {}
};

class EmptyFrontier : public Error {
 public:
  EmptyFrontier() : Error("search frontier is empty") {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t max_steps)
      : Error("search did not terminate within " + std::to_string(max_steps) + " steps") {}
};

class StatsError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public StatsError {
 public:
  EmptyInput() : StatsError("empty input") {}
};

class DegenerateInput : public StatsError {
 public:
  using StatsError::StatsError;
};

class ZeroVariance : public StatsError {
 public:
  ZeroVariance() : StatsError("pooled standard deviation is zero") {}
};

class ConstantX : public StatsError {
 public:
  ConstantX() : StatsError("regressor is constant") {}
};

// Every sampled focal patent was excluded. CLI exit code 4.
class NoUsableFocalPatents : public Error {
 public:
  explicit NoUsableFocalPatents(std::vector<std::string> diagnoses);
  const std::vector<std::string>& diagnoses() const { return diagnoses_; }

 private:
  std::vector<std::string> diagnoses_;
};

}  // namespace knowsearch
