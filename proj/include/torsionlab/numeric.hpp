#pragma once

// Exact scalar arithmetic used everywhere else: arbitrary-precision integers
// and rationals on top of boost::multiprecision. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace torsionlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy. Everything the library throws derives from Error so the CLI
// can map failures onto its exit-code contract.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad JSON, bad wire format, violated preconditions on data.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// A computation whose hypothesis fails (non-acyclic complex, d^2 != 0, ...).
class NotApplicable : public Error {
public:
    explicit NotApplicable(const std::string& what) : Error(what) {}
};

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline int sign_of(const Int& a) { return a.sign(); }
inline int sign_of(const Rat& a) { return a.sign(); }

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

// "p/q" with the "/q" omitted for integers; used in JSON output.
inline std::string rat_to_string(const Rat& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw ParseError("cannot parse rational '" + s + "': " + e.what());
    }
}

} // namespace torsionlab
