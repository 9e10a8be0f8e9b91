#include "ietlab/dist.hpp"

// Header-only templates; this TU pins explicit double instantiations so the
// common path stays out of client compile times.

namespace ietlab {

template Cplx<double> frak_B<double>(const double&, const double&);
template Cplx<double> frak_C<double>(const SaddleJetT<double>&, int, int);
template Cplx<double> frak_C_class<double>(const SaddleJetT<double>&,
                                           const SectorClass&, int);

}  // namespace ietlab
