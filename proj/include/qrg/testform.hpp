#ifndef QRG_TESTFORM_HPP
#define QRG_TESTFORM_HPP

#include "qrg/qform.hpp"

namespace qrg {

// The n-dimensional test form gamma_{a,n}: polar Gram matrix a(I_n + J_n),
// i.e. upper-triangular coefficients a on the diagonal and a strictly above.
// Cliques of size k+1 through 0 correspond to embeddings of gamma_{a,k}.
struct TestForm {
    Fe a = 0;
    int n = 0;
    QForm form;
    Fe polar_det = 0;          // equals (n+1) a^n
    bool nondegenerate = false;
    std::optional<int> arf;    // char-2 fields, even n, non-degenerate only
};

// Requires a to be a unit; the form itself may be degenerate (that is what
// the characteristic-divisibility case split detects).
TestForm make_gamma(const Ring& R, Fe a, int n);

enum class EmbedMode { subform, dominated };

struct EmbeddingReport {
    int k = 0;            // largest test-form dimension inside q (n-2..n)
    EmbedMode mode = EmbedMode::subform;
    // char-2 dominated case: smallest b with q isometric to
    // gamma_{a,n-2} + [a,b]
    std::optional<Fe> witness_b;
};

// Largest k with gamma_{a,k} embedded in q (subform, or dominated in the
// char-2 k = n-1 case). q non-degenerate, a a unit; over Z/p^k the
// classification runs on the residue field.
EmbeddingReport max_embedded_dimension(const QForm& q, Fe a);

}  // namespace qrg

#endif
