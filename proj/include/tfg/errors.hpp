#ifndef TFG_ERRORS_HPP
#define TFG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfg {

// Base class for errors caused by bad input.  The CLI maps these to exit
// code 2.  Anything derived from internal_error signals a broken invariant
// inside the library itself and maps to exit code 3.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

class code_out_of_range : public input_error {
public:
    explicit code_out_of_range(const std::string& what) : input_error(what) {}
};

class system_mismatch : public input_error {
public:
    explicit system_mismatch(const std::string& what) : input_error(what) {}
};

class empty_set_error : public input_error {
public:
    explicit empty_set_error(const std::string& what) : input_error(what) {}
};

class not_bijective : public input_error {
public:
    not_bijective(const std::string& what, long long a, long long b)
        : input_error(what), colliding_a(a), colliding_b(b) {}
    // Two source codes mapped to the same target code.
    long long colliding_a;
    long long colliding_b;
};

class not_positive : public input_error {
public:
    explicit not_positive(const std::string& what) : input_error(what) {}
};

class not_periodic : public input_error {
public:
    explicit not_periodic(const std::string& what) : input_error(what) {}
};

class depth_overflow : public input_error {
public:
    explicit depth_overflow(const std::string& what) : input_error(what) {}
};

class tail_mismatch : public input_error {
public:
    explicit tail_mismatch(const std::string& what) : input_error(what) {}
};

class overlap_error : public input_error {
public:
    explicit overlap_error(const std::string& what) : input_error(what) {}
};

class not_in_full_group : public input_error {
public:
    explicit not_in_full_group(const std::string& what) : input_error(what) {}
};

class parse_error : public input_error {
public:
    parse_error(const std::string& what, std::size_t pos)
        : input_error(what), position(pos) {}
    std::size_t position;  // 0-based offset into the source text
};

class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Postcondition check used throughout: failures are bugs, never bad input.
inline void ensure(bool condition, const char* what) {
    if (!condition) throw internal_error(what);
}

}  // namespace tfg

#endif
