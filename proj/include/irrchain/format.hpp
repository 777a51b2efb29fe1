#pragma once

// Bit-exact text formats.
//
//   element    prime field: decimal residue; extension: "[a0,a1,...]" with
//              coordinates over the base, constant-first, recursively
//   field      "p" or "p^k" (the modulus is implied by the deterministic
//              lexicographic construction)
//   polynomial "<field>;<c0>,<c1>,...,<cn>"  constant term first
//   matrix     "a,b;c,d"
//
// Parsing accepts an optional legacy "q=" prefix on the field part of a
// polynomial; emission never writes it.

#include <string>
#include <string_view>
#include <vector>

#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/moebius.hpp"
#include "irrchain/poly.hpp"

namespace irrchain {

inline std::string element_to_string(const Element& e) {
    if (e.field()->is_prime_field()) return std::to_string(e.residue());
    std::string s = "[";
    const auto cs = e.coords();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ",";
        s += element_to_string(cs[i]);
    }
    s += "]";
    return s;
}

inline std::string field_to_string(const FieldPtr& f) {
    if (f->is_prime_field()) return std::to_string(f->characteristic());
    if (f->height() == 1)
        return std::to_string(f->characteristic()) + "^" + std::to_string(f->extension_degree());
    throw Error("no text form for towers of height >= 2");
}

inline std::string poly_to_string(const Poly& f) {
    std::string s = field_to_string(f.field()) + ";";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += element_to_string(f.coeff(i));
    }
    return s;
}

inline std::string mat_to_string(const Mat2& m) {
    return element_to_string(m.a()) + "," + element_to_string(m.b()) + ";" +
           element_to_string(m.c()) + "," + element_to_string(m.d());
}

namespace detail {

inline u64 parse_decimal_u64(std::string_view s, std::size_t& pos) {
    const std::size_t start = pos;
    u64 v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        if (v > (~static_cast<u64>(0)) / 10 - 1) throw ParseError("integer too large", pos);
        v = v * 10 + static_cast<u64>(s[pos] - '0');
        ++pos;
    }
    if (pos == start) throw ParseError("expected a decimal integer", pos);
    return v;
}

inline Element parse_element_at(const FieldPtr& f, std::string_view s, std::size_t& pos) {
    if (f->is_prime_field()) {
        const std::size_t at = pos;
        u64 v = parse_decimal_u64(s, pos);
        if (v >= f->characteristic()) throw ParseError("residue out of range", at);
        return f->from_flat({v});
    }
    if (pos >= s.size() || s[pos] != '[') throw ParseError("expected '['", pos);
    ++pos;
    std::vector<Element> coords;
    for (std::size_t i = 0; i < f->extension_degree(); ++i) {
        if (i) {
            if (pos >= s.size() || s[pos] != ',') throw ParseError("expected ','", pos);
            ++pos;
        }
        coords.push_back(parse_element_at(f->base(), s, pos));
    }
    if (pos >= s.size() || s[pos] != ']') throw ParseError("expected ']'", pos);
    ++pos;
    return f->from_coords(coords);
}

}  // namespace detail

inline Element parse_element(const FieldPtr& f, std::string_view s) {
    std::size_t pos = 0;
    Element e = detail::parse_element_at(f, s, pos);
    if (pos != s.size()) throw ParseError("trailing characters after element", pos);
    return e;
}

/// "p" or "p^k"; the extension modulus is the deterministic lexicographic one.
inline FieldPtr parse_field(std::string_view s) {
    std::size_t pos = 0;
    const u64 p = detail::parse_decimal_u64(s, pos);
    if (pos == s.size()) return make_prime_field(p);
    if (s[pos] != '^') throw ParseError("expected '^' in field spec", pos);
    ++pos;
    const u64 k = detail::parse_decimal_u64(s, pos);
    if (pos != s.size()) throw ParseError("trailing characters in field spec", pos);
    if (k < 1) throw ParseError("extension degree must be >= 1", pos);
    FieldPtr base = make_prime_field(p);
    return k == 1 ? base : make_extension(base, k);
}

/// Coefficient list "<c0>,<c1>,..." over a known field; empty list is the
/// zero polynomial.
inline Poly parse_poly_over(const FieldPtr& f, std::string_view s) {
    std::vector<Element> cs;
    std::size_t pos = 0;
    if (!s.empty()) {
        for (;;) {
            cs.push_back(detail::parse_element_at(f, s, pos));
            if (pos == s.size()) break;
            if (s[pos] != ',') throw ParseError("expected ',' between coefficients", pos);
            ++pos;
        }
    }
    return Poly::from_coeffs(f, std::move(cs));
}

inline Poly parse_poly(std::string_view s) {
    const std::size_t semi = s.find(';');
    if (semi == std::string_view::npos) throw ParseError("expected ';' in polynomial", 0);
    std::string_view fs = s.substr(0, semi);
    if (fs.rfind("q=", 0) == 0) fs.remove_prefix(2);
    FieldPtr f = parse_field(fs);
    std::vector<Element> cs;
    std::size_t pos = semi + 1;  // positions reported against the whole input
    if (pos < s.size()) {
        for (;;) {
            cs.push_back(detail::parse_element_at(f, s, pos));
            if (pos == s.size()) break;
            if (s[pos] != ',') throw ParseError("expected ',' between coefficients", pos);
            ++pos;
        }
    }
    return Poly::from_coeffs(f, std::move(cs));
}

/// "a,b;c,d" with entries in the element format. Commas inside bracketed
/// extension elements do not split entries.
inline Mat2 parse_matrix(const FieldPtr& f, std::string_view s) {
    std::size_t pos = 0;
    auto entry = [&]() { return detail::parse_element_at(f, s, pos); };
    auto expect = [&](char c) {
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    };
    Element a = entry();
    expect(',');
    Element b = entry();
    expect(';');
    Element c = entry();
    expect(',');
    Element d = entry();
    if (pos != s.size()) throw ParseError("trailing characters after matrix", pos);
    return Mat2(std::move(a), std::move(b), std::move(c), std::move(d));
}

}  // namespace irrchain
