#include "doctest.h"
#include "gammaseq/certified.hpp"

#include <cmath>
#include <initializer_list>

using namespace gammaseq;

TEST_CASE("certified value containment and propagation") {
    CertifiedValue a{1.0, 1e-10, false};
    CHECK(a.contains(1.0 + 5e-11));
    CHECK(!a.contains(1.0 + 2e-10));

    CertifiedValue b{2.0, 1e-12, false};
    const CertifiedValue s = cv_add(a, b);
    CHECK(s.value == 3.0);
    CHECK(s.err >= a.err + b.err);

    const CertifiedValue p = cv_mul(a, b);
    CHECK(p.value == 2.0);
    CHECK(p.err >= 2.0 * a.err + 1.0 * b.err);
}

TEST_CASE("exp propagation dominates the true image width") {
    // exp(v +- e) must stay inside value +- err for e < 1/2
    for (double e : {1e-12, 1e-6, 1e-2, 0.4}) {
        CertifiedValue a{0.3, e, false};
        const CertifiedValue g = cv_exp(a);
        CHECK(g.value + g.err >= std::exp(a.value + e));
        CHECK(g.value - g.err <= std::exp(a.value - e));
    }
}

TEST_CASE("degraded flag survives propagation") {
    CertifiedValue a{1.0, 1e-15, true};
    CertifiedValue b{1.0, 1e-15, false};
    CHECK(cv_add(a, b).degraded);
    CHECK(cv_mul(b, a).degraded);
    CHECK(!cv_add(b, b).degraded);
}
