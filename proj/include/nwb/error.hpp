#pragma once

#include <stdexcept>
#include <string>

namespace nwb {

enum class ErrorKind {
  Invalid,
  Parse,
  Exhausted,
  EmptyResult,
  OffBase,
  NotInTree,
  UnsupportedRestriction,
  TerminalNode,
  BaseClash,
  NotIncreasing,
  SizeViolation,
  FuelExhausted,
  RankMismatch,
  NotFoundInWindow,
  ShortElement,
  RankOrderViolated,
  NotUniform,
  NotInIdeal,
  WindowExhausted,
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Invalid: return "Invalid";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::OffBase: return "OffBase";
    case ErrorKind::NotInTree: return "NotInTree";
    case ErrorKind::UnsupportedRestriction: return "UnsupportedRestriction";
    case ErrorKind::TerminalNode: return "TerminalNode";
    case ErrorKind::BaseClash: return "BaseClash";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::SizeViolation: return "SizeViolation";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotFoundInWindow: return "NotFoundInWindow";
    case ErrorKind::ShortElement: return "ShortElement";
    case ErrorKind::RankOrderViolated: return "RankOrderViolated";
    case ErrorKind::NotUniform: return "NotUniform";
    case ErrorKind::NotInIdeal: return "NotInIdeal";
    case ErrorKind::WindowExhausted: return "WindowExhausted";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(kind_name(k)) + ": " + msg), kind_(k) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace nwb
