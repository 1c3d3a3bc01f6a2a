#pragma once

#include <cmath>
#include <vector>

namespace qdom {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

// Same rule mapped to [a, b].
inline GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule r = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * r.nodes[i];
        r.weights[i] *= 0.5 * (b - a);
    }
    return r;
}

} // namespace qdom
