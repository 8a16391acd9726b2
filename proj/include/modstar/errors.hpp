#pragma once

#include <stdexcept>
#include <string>

namespace modstar {

// Base class for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated operation precondition (bad modulus, non-coprime input, ...).
// The CLI maps these to exit code 2.
struct precondition_error : error {
    using error::error;
};

struct modulus_error : precondition_error {
    using precondition_error::precondition_error;
};

struct coprimality_error : precondition_error {
    using precondition_error::precondition_error;
};

struct modulus_mismatch_error : precondition_error {
    using precondition_error::precondition_error;
};

struct non_cyclic_modulus_error : precondition_error {
    using precondition_error::precondition_error;
};

struct wrong_shape_error : precondition_error {
    using precondition_error::precondition_error;
};

struct level_inapplicable_error : precondition_error {
    using precondition_error::precondition_error;
};

struct non_residue_error : precondition_error {
    using precondition_error::precondition_error;
};

struct invalid_base_error : precondition_error {
    using precondition_error::precondition_error;
};

// Input exceeds a configured size or memory bound.
struct limit_error : precondition_error {
    using precondition_error::precondition_error;
};

// Filesystem trouble. CLI exit code 3.
struct io_error : error {
    using error::error;
};

// Corrupt or mismatched checkpoint data; message carries the offending row.
struct checkpoint_error : io_error {
    using io_error::io_error;
};

// An internal consistency check failed; indicates a bug, not bad input.
// CLI exit code 4.
struct internal_error : error {
    using error::error;
};

} // namespace modstar
