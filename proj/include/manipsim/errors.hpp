#pragma once

#include <stdexcept>
#include <string>

namespace manipsim {

// Broad failure classes; the CLI maps each one to its own exit code.
enum class ErrorClass { Config, Io, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define MANIPSIM_DEFINE_ERROR(Name, Class)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorClass::Class, what) {} \
  };

MANIPSIM_DEFINE_ERROR(DimensionError, Config)
MANIPSIM_DEFINE_ERROR(InvalidLinkType, Config)
MANIPSIM_DEFINE_ERROR(NonFiniteValue, Config)
MANIPSIM_DEFINE_ERROR(IndexError, Config)
MANIPSIM_DEFINE_ERROR(MissingJointValue, Config)
MANIPSIM_DEFINE_ERROR(InvalidRange, Config)
MANIPSIM_DEFINE_ERROR(MissingInputs, Config)
MANIPSIM_DEFINE_ERROR(ConfigError, Config)
MANIPSIM_DEFINE_ERROR(IoError, Io)
MANIPSIM_DEFINE_ERROR(FormatVersionMismatch, Io)
MANIPSIM_DEFINE_ERROR(InconsistentPlan, Internal)

#undef MANIPSIM_DEFINE_ERROR

}  // namespace manipsim
