#pragma once

#include <stdexcept>
#include <string>

namespace qdom {

struct NotDivisible : std::runtime_error {
    explicit NotDivisible(const std::string& m) : std::runtime_error(m) {}
};
struct NotPolynomial : std::runtime_error {
    explicit NotPolynomial(const std::string& m) : std::runtime_error(m) {}
};
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& m) : std::runtime_error(m) {}
};
struct NonUnivalent : std::runtime_error {
    explicit NonUnivalent(const std::string& m) : std::runtime_error(m) {}
};
struct SourceOnMirror : std::runtime_error {
    explicit SourceOnMirror(const std::string& m) : std::runtime_error(m) {}
};
struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& m) : std::runtime_error(m) {}
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace qdom
