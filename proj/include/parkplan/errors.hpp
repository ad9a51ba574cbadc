#pragma once

#include <stdexcept>
#include <string>

namespace parkplan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct BoundsError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct GeometryError : Error {
  using Error::Error;
};
struct EmptyError : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct StartBlockedError : Error {
  using Error::Error;
};
struct PathNotFoundError : Error {
  using Error::Error;
};
struct InternalError : Error {
  using Error::Error;
};
struct TrackingFailure : Error {
  using Error::Error;
};
struct InfeasibleError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace parkplan
