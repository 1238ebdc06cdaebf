// Builds E and F, forms their product and evaluates its linking form.
#include <lspectra/poincare.hpp>

#include <iostream>

using namespace lspectra;

int main() {
    StructuredComplex E = builtin_E(), F = builtin_F();
    StructuredComplex EF = tensor_structured(E, F);

    std::cout << "E x F: " << (EF.kind == StructureKind::Quadratic ? "quadratic" : "symmetric") << ", dimension "
              << EF.dim << "\n";
    for (auto& [n, r] : EF.C.ranks()) std::cout << "  C_" << n << " = Z^" << r << ", H_" << n << " = "
                                                << homology(EF.C, n).to_string() << "\n";
    std::cout << "  acyclic after inverting 2: " << (acyclic_after_inverting_two(EF.C) ? "yes" : "no") << "\n";
    std::cout << "  psi_1 vanishes: " << (EF.level(1).is_zero() ? "yes" : "no") << "\n";

    LinkingForm q = linking_form(EF);
    for (long i = 0; i < q.order(); ++i) {
        auto x = q.element(i);
        std::cout << "  q(" << x[0] << x[1] << ") = " << q.q(i).to_string() << "\n";
    }
    GaussSum g = gauss_sum(q);
    std::cout << "beta = " << g.beta << "\n";

    // swapping F for the hyperbolic plane kills the invariant
    std::cout << "beta(E x hyperbolic) = " << certify_ef(E, builtin_hyperbolic()) << "\n";
    return g.beta == 4 ? 0 : 1;
}
