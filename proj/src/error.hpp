#pragma once

#include <stdexcept>
#include <string>

namespace crp {

enum class Errc {
    Ok = 0,
    SyntaxError,
    UnknownVariable,
    IndexOutOfRange,
    SqrtPresent,
    DivisionByZeroPolynomial,
    InvalidSqrtArgument,
    NegativeSqrtArgument,
    PoleAtPoint,
    NoValidSamplePoint,
    SingularFrameAt0,
    SqrtCoefficientsUnsupported,
    ConstraintViolated,
    NonTermination,
    ReductionOrderInsufficient,
    NotTangent,
    NotOnSurface,
    BadInput,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string msg, std::size_t pos = npos)
        : std::runtime_error(std::move(msg)), code_(code), pos_(pos) {}

    Errc code() const { return code_; }
    // Byte offset into the input text for parse errors; npos otherwise.
    std::size_t pos() const { return pos_; }
    bool has_pos() const { return pos_ != npos; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    Errc code_;
    std::size_t pos_;
};

[[noreturn]] inline void fail(Errc code, std::string msg, std::size_t pos = Error::npos) {
    throw Error(code, std::move(msg), pos);
}

} // namespace crp
