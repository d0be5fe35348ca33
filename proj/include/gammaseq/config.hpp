#pragma once

#include <cstdint>
#include <stdexcept>

namespace gammaseq {

// Accuracy and budget knobs shared by every series / kernel evaluation.
struct EvalConfig {
    double target_err = 1e-12;            // absolute error goal per evaluation
    std::int64_t max_terms = 10'000'000;  // series term budget
    double shift_threshold = 40.0;        // recurrence-shift target for the asymptotic kernels

    void validate() const {
        if (!(target_err > 0.0))
            throw std::invalid_argument("EvalConfig: target_err must be > 0");
        if (max_terms < 1)
            throw std::invalid_argument("EvalConfig: max_terms must be >= 1");
        if (!(shift_threshold > 0.0))
            throw std::invalid_argument("EvalConfig: shift_threshold must be > 0");
    }
};

}  // namespace gammaseq
