#pragma once

#include <stdexcept>
#include <string>

namespace saari {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BinaryCollision : Error {
    explicit BinaryCollision(const std::string& what = "binary collision") : Error(what) {}
};

struct TotalCollision : Error {
    explicit TotalCollision(const std::string& what = "total collision (I = 0)") : Error(what) {}
};

struct CollisionStop : Error {
    double t_stop;
    explicit CollisionStop(double t, const std::string& what = "integration stopped at collision")
        : Error(what), t_stop(t) {}
};

struct StepSizeUnderflow : Error {
    explicit StepSizeUnderflow(const std::string& what = "step size underflow") : Error(what) {}
};

struct InsufficientSamples : Error {
    explicit InsufficientSamples(const std::string& what = "too few samples for finite differences")
        : Error(what) {}
};

struct CriticalPoint : Error {
    explicit CriticalPoint(const std::string& what = "gradient of mu vanishes here") : Error(what) {}
};

struct CriticalPointEncounter : Error {
    explicit CriticalPointEncounter(const std::string& what = "path hit a critical point of mu")
        : Error(what) {}
};

struct OpenContourBudget : Error {
    explicit OpenContourBudget(const std::string& what = "node budget exhausted before closure")
        : Error(what) {}
};

struct Unphysical : Error {
    explicit Unphysical(const std::string& what = "point violates the triangle inequalities")
        : Error(what) {}
};

struct CollinearSingularity : Error {
    explicit CollinearSingularity(const std::string& what = "bipolar metric singular on the collinear locus")
        : Error(what) {}
};

struct DegenerateDiscriminant : Error {
    explicit DegenerateDiscriminant(const std::string& what = "degenerate quadratic discriminant")
        : Error(what) {}
};

struct RootFindingFailure : Error {
    explicit RootFindingFailure(const std::string& what = "polynomial root finding failed")
        : Error(what) {}
};

struct NewtonDivergence : Error {
    explicit NewtonDivergence(const std::string& what = "series Newton iteration diverged") : Error(what) {}
};

struct SqrtBranch : Error {
    explicit SqrtBranch(const std::string& what = "sqrt of series with odd leading exponent")
        : Error(what) {}
};

struct DivideByZeroSeries : Error {
    explicit DivideByZeroSeries(const std::string& what = "division by the zero series") : Error(what) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what = "working precision exhausted") : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what = "invalid run configuration") : Error(what) {}
};

struct SolverStall : Error {
    explicit SolverStall(const std::string& what = "nonlinear solver stalled") : Error(what) {}
};

}  // namespace saari
