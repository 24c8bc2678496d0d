#pragma once

#include <string>

namespace cmmod {

// Resource bounds shared by every engine entry point. All of them are
// configuration; the defaults are sized so the test suites finish on a desk.
struct Limits {
    int lmax = 10;              // largest modular polynomial level
    int formula_lmax = 7;       // largest level accepted in formulas
    int nmax = 4;               // largest arity of an equation system
    long dmax = 10000;          // largest |D| for class polynomials
    int precision_bits = 256;   // starting precision for numerics
    int max_precision_bits = 16384;
    long branch_cap = 2'000'000; // cap on enumerated branch tuples
    std::string cache_dir;      // empty: in-memory cache only
};

} // namespace cmmod
