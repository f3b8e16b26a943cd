#include "zerotest.hpp"

namespace crp {

const char* zero_kind_name(ZeroKind k) {
    switch (k) {
        case ZeroKind::ExactZero: return "ExactZero";
        case ZeroKind::ProbablyZero: return "ProbablyZero";
        case ZeroKind::NonZero: return "NonZero";
    }
    return "?";
}

PointSampler polydisc_sampler(int n, double radius) {
    return [n, radius](Rng& rng) { return rng.next_polydisc(n, radius); };
}

ZeroVerdict is_zero(const Ex& e, int n, const IsZeroOptions& opt) {
    if (opt.trials < 1) fail(Errc::BadInput, "is_zero requires trials >= 1");
    if (auto exact = exact_zero(e, n)) {
        if (*exact) return {ZeroKind::ExactZero, {}, {}};
        // provably nonzero on the rational class; fall through to exhibit a
        // witness point
    }
    Rng rng(opt.seed);
    PointSampler sample = opt.sampler ? opt.sampler : polydisc_sampler(n);
    int done = 0;
    while (done < opt.trials) {
        bool evaluated = false;
        for (int attempt = 0; attempt < opt.max_retries && !evaluated; ++attempt) {
            auto pt = sample(rng);
            try {
                std::complex<double> v = ex_eval(e, pt);
                evaluated = true;
                ++done;
                if (std::abs(v) >= opt.tol) return {ZeroKind::NonZero, pt, v};
            } catch (const Error& err) {
                if (err.code() != Errc::PoleAtPoint && err.code() != Errc::NegativeSqrtArgument) throw;
            }
        }
        if (!evaluated)
            fail(Errc::NoValidSamplePoint, "no admissible sample point after retries");
    }
    return {ZeroKind::ProbablyZero, {}, {}};
}

} // namespace crp
