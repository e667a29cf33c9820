#include "ccsl/bounds.hpp"
#include "ccsl/error.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

namespace ccsl {

namespace {

struct Outcome {
    std::optional<double> value;
    ErrorKind kind = ErrorKind::InvalidArgument;
    std::string message;
};

Outcome evaluate(const ExperimentDescriptor& e, const NoiseSpec& n, double rc) {
    Outcome out;
    try {
        const double v = lambda_max(e, n, rc);
        if (std::isfinite(v) && v > 0.0) {
            out.value = v;
        } else {
            out.kind = ErrorKind::WashedOut;
            out.message = "bound is not finite";
        }
    } catch (const Error& err) {
        out.kind = err.kind();
        out.message = err.what();
    } catch (const std::exception& err) {
        out.message = err.what();
    }
    return out;
}

void check_grid(const std::vector<double>& rc_grid) {
    if (rc_grid.empty())
        throw Error(ErrorKind::EmptyInput, "empty r_C grid");
    for (std::size_t i = 0; i < rc_grid.size(); ++i) {
        const double rc = rc_grid[i];
        if (!(rc >= 1e-12 && rc <= 1e-1))
            throw Error(ErrorKind::InvalidArgument, "r_C grid must lie within [1e-12, 1e-1] m");
        if (i > 0 && !(rc > rc_grid[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "r_C grid must be strictly increasing");
    }
}

} // namespace

ScanResult scan(const std::vector<ExperimentDescriptor>& experiments, const NoiseSpec& n,
                const std::vector<double>& rc_grid, unsigned jobs) {
    check_grid(rc_grid);
    for (const auto& e : experiments)
        validate(e);

    const std::size_t ng = rc_grid.size();
    const std::size_t total = experiments.size() * ng;
    std::vector<Outcome> outcomes(total);

    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++)
            outcomes[i] = evaluate(experiments[i / ng], n, rc_grid[i % ng]);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    ScanResult result;
    result.attempted = total;
    result.curves.reserve(experiments.size());
    for (std::size_t ie = 0; ie < experiments.size(); ++ie) {
        ExclusionCurve curve{experiments[ie].id, n, {}};
        for (std::size_t ig = 0; ig < ng; ++ig) {
            const Outcome& o = outcomes[ie * ng + ig];
            if (o.value)
                curve.points.push_back({rc_grid[ig], *o.value});
            else
                result.errors.push_back({experiments[ie].id, rc_grid[ig], o.kind, o.message});
        }
        result.curves.push_back(std::move(curve));
    }
    return result;
}

} // namespace ccsl
