#include "phaserank/pipeline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "phaserank/errors.hpp"

namespace phaserank {

void FilterConfig::validate() const {
    if (window < 3 || window % 2 == 0) {
        throw InvalidParameterError("filter: window must be an odd integer >= 3, got " +
                                    std::to_string(window));
    }
    if (polyorder < 0 || polyorder >= window) {
        throw InvalidParameterError("filter: polyorder must be in [0, window), got " +
                                    std::to_string(polyorder));
    }
}

namespace {

// Hat matrix of the local polynomial fit: row k gives the weights that
// evaluate the window's least-squares polynomial at window position k.
Eigen::MatrixXd savgol_hat(int window, int polyorder) {
    const int half = window / 2;
    Eigen::MatrixXd design(window, polyorder + 1);
    for (int i = 0; i < window; ++i) {
        double p = 1.0;
        for (int j = 0; j <= polyorder; ++j) {
            design(i, j) = p;
            p *= static_cast<double>(i - half);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd q =
        qr.householderQ() * Eigen::MatrixXd::Identity(window, polyorder + 1);
    return q * q.transpose();
}

}  // namespace

TagTrace savitzky_golay(const TagTrace& trace, const FilterConfig& cfg) {
    cfg.validate();
    const int n = static_cast<int>(trace.size());
    if (n < cfg.window) {
        throw InsufficientDataError("savitzky_golay: trace " + trace.tag_id + " has " +
                                    std::to_string(n) + " samples, window needs " +
                                    std::to_string(cfg.window));
    }

    const int w = cfg.window;
    const int half = w / 2;
    const Eigen::MatrixXd hat = savgol_hat(w, cfg.polyorder);

    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i) values(i) = trace.samples[i].phase;

    TagTrace out = trace;  // keeps rounds and timestamps
    for (int i = 0; i < n; ++i) {
        int window_start;
        int pos;  // position of sample i inside its window
        if (i < half) {
            window_start = 0;
            pos = i;
        } else if (i >= n - half) {
            window_start = n - w;
            pos = i - window_start;
        } else {
            window_start = i - half;
            pos = half;
        }
        out.samples[i].phase = hat.row(pos).dot(values.segment(window_start, w));
    }
    return out;
}

namespace {

double median_of(const double* begin, int count, std::vector<double>& scratch) {
    scratch.assign(begin, begin + count);
    auto mid = scratch.begin() + count / 2;
    std::nth_element(scratch.begin(), mid, scratch.end());
    if (count % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(scratch.begin(), mid);
    return 0.5 * (lower + upper);
}

}  // namespace

std::vector<IndexRange> detect_rotation_events(const TagTrace& trace, double step_threshold,
                                               int sustain) {
    if (sustain < 1) {
        throw InvalidParameterError("detect_rotation_events: sustain must be >= 1");
    }
    if (!(step_threshold > 0.0)) {
        throw InvalidParameterError("detect_rotation_events: threshold must be > 0");
    }

    std::vector<IndexRange> ranges;
    const int n = static_cast<int>(trace.size());
    if (n < 2 * sustain) return ranges;

    std::vector<double> values(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) values[i] = trace.samples[i].phase;

    std::vector<double> scratch;
    bool open = false;
    IndexRange current;
    for (int i = sustain; i + sustain <= n; ++i) {
        const double before = median_of(values.data() + i - sustain, sustain, scratch);
        const double after = median_of(values.data() + i, sustain, scratch);
        const double shift = std::abs(after - before);
        if (shift > step_threshold) {
            if (!open) {
                open = true;
                current = IndexRange{static_cast<std::size_t>(i), 0, shift};
            }
            current.end = static_cast<std::size_t>(i) + 1;
            current.max_shift = std::max(current.max_shift, shift);
        } else if (open) {
            ranges.push_back(current);
            open = false;
        }
    }
    if (open) ranges.push_back(current);
    return ranges;
}

}  // namespace phaserank
