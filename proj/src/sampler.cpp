#include "gsplab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsplab/error.hpp"
#include "gsplab/moments.hpp"
#include "gsplab/parallel.hpp"
#include "gsplab/quadrature.hpp"
#include "gsplab/roots.hpp"

namespace gsplab {

namespace {

constexpr std::size_t kChunk = 1u << 14;
constexpr std::size_t kMinEstimateDraws = 100;

}  // namespace

QuantileFunction::QuantileFunction(FunctionSpec spec, double a, double tol)
    : spec_(std::move(spec)), a_(a), lo_(spec_.lower_limit()), tol_(tol) {
    require_scale(spec_, a_);
    if (!(tol_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");

    if (spec_.family() == Family::PowerLaw) {
        closed_form_ = true;
        total_ = spec_.amp() * std::pow(a_, spec_.p() + 1.0) / (spec_.p() + 1.0);
        return;
    }

    knots_.resize(kKnots + 1);
    cumulative_.assign(kKnots + 1, 0.0);
    for (std::size_t k = 0; k <= kKnots; ++k) {
        knots_[k] = k == kKnots ? a_ : lo_ + (a_ - lo_) * double(k) / double(kKnots);
    }
    const double fa = spec_.eval(a_);
    auto f = [this](double x) { return spec_.eval(x); };
    for (std::size_t k = 1; k <= kKnots; ++k) {
        const double width = knots_[k] - knots_[k - 1];
        const QuadResult r = integrate(f, knots_[k - 1], knots_[k], QuadOptions{1e-3 * tol_ * fa * width, tol_});
        cumulative_[k] = cumulative_[k - 1] + r.value;
    }
    total_ = cumulative_.back();
}

double QuantileFunction::partial(std::size_t k, double x) const {
    if (x <= knots_[k]) return 0.0;
    return integrate([this](double t) { return spec_.eval(t); }, knots_[k], x,
                     QuadOptions{0.1 * tol_ * total_, tol_})
        .value;
}

double QuantileFunction::cdf(double x) const {
    if (!(x >= lo_) || x > a_) throw Error(ErrorCode::DomainExceeded, "cdf argument outside [lower, a]");
    if (closed_form_) return spec_.amp() * std::pow(x, spec_.p() + 1.0) / (spec_.p() + 1.0);
    if (x == a_) return total_;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - knots_.begin()) - 1, kKnots - 1);
    return cumulative_[k] + partial(k, x);
}

double QuantileFunction::operator()(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::InvalidArgument, "u must lie in [0, 1]");
    if (u == 0.0) return lo_;
    if (u == 1.0) return a_;
    if (closed_form_) return a_ * std::pow(u, 1.0 / (spec_.p() + 1.0));

    const double target = u * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    const std::size_t k =
        std::min<std::size_t>(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0)),
                              kKnots - 1);
    auto phi = [&](double x) { return cumulative_[k] + partial(k, x) - target; };
    const double xtol = 4.0 * std::numeric_limits<double>::epsilon() * a_;
    const RootResult r = solve_bracketed(phi, knots_[k], knots_[k + 1], cumulative_[k] - target,
                                         cumulative_[k + 1] - target, xtol, tol_ * total_, 1);
    return std::clamp(r.x, knots_[k], knots_[k + 1]);
}

double inverse_cdf(const FunctionSpec& spec, double a, double u, double tol) {
    return QuantileFunction(spec, a, tol)(u);
}

void MCAccumulator::push(double x, double fx) {
    ++n_;
    const double n = static_cast<double>(n_);
    const double dx = x - mx_;
    const double df = fx - mf_;
    mx_ += dx / n;
    mf_ += df / n;
    m2x_ += dx * (x - mx_);
    m2f_ += df * (fx - mf_);
    cxf_ += dx * (fx - mf_);
}

void MCAccumulator::merge(const MCAccumulator& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const double dx = o.mx_ - mx_;
    const double df = o.mf_ - mf_;
    mx_ += dx * nb / n;
    mf_ += df * nb / n;
    m2x_ += o.m2x_ + dx * dx * na * nb / n;
    m2f_ += o.m2f_ + df * df * na * nb / n;
    cxf_ += o.cxf_ + dx * df * na * nb / n;
    n_ += o.n_;
}

MCEstimate MCAccumulator::estimate() const {
    MCEstimate e;
    e.n = n_;
    e.mean_x = mx_;
    e.mean_fx = mf_;
    if (n_ > 1) {
        const double n = static_cast<double>(n_);
        e.stderr_x = std::sqrt(m2x_ / (n - 1.0) / n);
        e.stderr_fx = std::sqrt(m2f_ / (n - 1.0) / n);
        e.cov_x_fx = cxf_ / (n - 1.0);
    }
    return e;
}

SamplerState::SamplerState(FunctionSpec spec, double a, std::uint64_t seed, std::uint64_t stream, double tol)
    : quantile_(std::make_shared<const QuantileFunction>(std::move(spec), a, tol)), rng_(seed, stream) {}

SamplerState::SamplerState(std::shared_ptr<const QuantileFunction> q, CounterRng rng)
    : quantile_(std::move(q)), rng_(rng) {}

SamplerState SamplerState::split(std::uint64_t stream_id) const {
    return SamplerState(quantile_, rng_.split(stream_id));
}

std::vector<double> SamplerState::sample(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    std::vector<double> out(n);
    const std::uint64_t base = counter_;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) out[i] = (*quantile_)(rng_.uniform_at(base + i));
    });
    counter_ += n;
    return out;
}

MCEstimate SamplerState::mc_estimates(std::size_t n) {
    if (n < kMinEstimateDraws) {
        throw Error(ErrorCode::InvalidArgument, "mc_estimates needs n >= 100");
    }
    const std::uint64_t base = counter_;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<MCAccumulator> parts(chunks);
    const FunctionSpec& f = quantile_->spec();
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            const double x = (*quantile_)(rng_.uniform_at(base + i));
            parts[c].push(x, f.eval(x));
        }
    });
    MCAccumulator total;
    for (const auto& p : parts) total.merge(p);
    counter_ += n;
    return total.estimate();
}

}  // namespace gsplab
