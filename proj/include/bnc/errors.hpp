#pragma once
#include <stdexcept>
#include <string>

namespace bnc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BNC_ERROR(Name)              \
    struct Name : Error {            \
        using Error::Error;          \
    }

BNC_ERROR(MismatchedAlgebra);
BNC_ERROR(AlphabetError);
BNC_ERROR(SizeMismatch);
BNC_ERROR(CapExceeded);
BNC_ERROR(NotBNC);
BNC_ERROR(HasTopSpine);
BNC_ERROR(SuffixMismatch);
BNC_ERROR(DepthExceeded);
BNC_ERROR(SideMismatch);
BNC_ERROR(ColouringError);
BNC_ERROR(ParseError);

#undef BNC_ERROR

}  // namespace bnc
