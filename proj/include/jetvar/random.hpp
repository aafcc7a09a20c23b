#pragma once

#include <cstdint>
#include <random>

#include "jetvar/forms.hpp"
#include "jetvar/jet.hpp"
#include "jetvar/jet_model.hpp"

namespace jetvar {

struct RandomOptions {
    int max_order = 1;    // highest jet order of atoms
    int max_terms = 3;
    int max_factors = 2;  // even factors per term
    bool functions = false;
    bool use_odd = true;  // include odd jets when the model has odd fields
};

// Deterministic generators for property tests.
class RandomInputs {
public:
    RandomInputs(const JetModel& model, std::uint64_t seed, RandomOptions opts = {});

    Expression expression(Parity parity = Parity::Even);
    // Even expression in base coordinates and order-0 fields only.
    Expression order_zero_expression();
    Expression base_expression();
    // Homogeneous form of the given degree and parity in the {dx, θ} basis.
    DifferentialForm form(int degree, Parity parity = Parity::Even);
    ContactDerivation contact_derivation(bool odd = false);
    // Projectable vector field with order-0 coefficients.
    ContactDerivation vector_field();
    int integer(int lo, int hi);

private:
    Atom even_atom(int max_order);
    Atom odd_atom(int max_order);
    Generator generator();

    const JetModel& model_;
    std::mt19937_64 rng_;
    RandomOptions opts_;
};

}  // namespace jetvar
