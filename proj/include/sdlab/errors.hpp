#ifndef SDLAB_ERRORS_HPP
#define SDLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdlab {

// Contract violations (bad arguments, malformed configs) map to CLI exit 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& key, const std::string& what)
        : std::runtime_error("config key '" + key + "': " + what), key_(key) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Numerical aborts (blow-up, failed quadrature) map to CLI exit 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, std::size_t step = 0)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

}  // namespace sdlab

#endif
