#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace acd {

// Base for everything this library throws on purpose. Anything else
// escaping a public entry point is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Structurally well-formed input violating a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Offline annotation requested for a sentence with no recorded parse.
class MissingParseError : public Error {
 public:
  explicit MissingParseError(const std::string& sentence)
      : Error("no recorded parse for sentence: " + sentence),
        sentence_(sentence) {}
  const std::string& sentence() const { return sentence_; }

 private:
  std::string sentence_;
};

// Aggregate of all fixture misses discovered during one pipeline run.
class MissingParsesError : public Error {
 public:
  explicit MissingParsesError(std::vector<std::string> sentences)
      : Error(join(sentences)), sentences_(std::move(sentences)) {}
  const std::vector<std::string>& sentences() const { return sentences_; }

 private:
  static std::string join(const std::vector<std::string>& ss) {
    std::string m = "missing parse fixtures for " +
                    std::to_string(ss.size()) + " sentence(s):";
    for (const auto& s : ss) m += "\n  " + s;
    return m;
  }
  std::vector<std::string> sentences_;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace acd
