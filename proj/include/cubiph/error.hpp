#pragma once

#include <stdexcept>
#include <string>

namespace cubiph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ingest
class FormatError : public Error { using Error::Error; };
class CorruptFileError : public Error { using Error::Error; };
class TruncationError : public Error { using Error::Error; };

class DomainError : public Error { using Error::Error; };
class InvalidOrderError : public Error { using Error::Error; };
class ParameterError : public Error { using Error::Error; };
class InputError : public Error { using Error::Error; };
class OracleScopeError : public Error { using Error::Error; };
class InternalError : public Error { using Error::Error; };

/// File-system failure; the message always names the offending path.
class IoError : public Error { using Error::Error; };

} // namespace cubiph
