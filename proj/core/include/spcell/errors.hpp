#pragma once

#include <stdexcept>
#include <string>

namespace spcell {

/** Base class of every error thrown by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// geometry
class DegenerateLattice : public Error { public: using Error::Error; };
class BadGrid : public Error { public: using Error::Error; };
class BadTruncation : public Error { public: using Error::Error; };

// fields and spectral operators
class CellMismatch : public Error { public: using Error::Error; };
class NonNeutral : public Error { public: using Error::Error; };

// densities
class UnderResolved : public Error { public: using Error::Error; };
class ZeroField : public Error { public: using Error::Error; };

// energy
class NotTangent : public Error { public: using Error::Error; };

// minimizer
class LineSearchStalled : public Error { public: using Error::Error; };
class NotConverged : public Error { public: using Error::Error; };

// ground-state assembly and studies
class WrongDimension : public Error { public: using Error::Error; };
class CheckFailed : public Error { public: using Error::Error; };

// configuration ingestion and argument validation
class ValidationError : public Error { public: using Error::Error; };

} // namespace spcell
