#ifndef PPTBOUNDS_SCAN_GOLDEN_HPP
#define PPTBOUNDS_SCAN_GOLDEN_HPP

// Regression values for the alpha sweep, recorded from a run whose
// solutions passed independent verification (verify_solution residuals
// below 1e-8 on every solve). e_eta tracks -log2(1-alpha); e_w has no
// closed form.
struct ScanGoldenRow {
    double alpha, e_w, e_eta;
};

inline constexpr ScanGoldenRow kScanGolden[17] = {
    {0.420, 0.763834039, 0.785875190},
    {0.425, 0.764776360, 0.798366134},
    {0.430, 0.765655978, 0.810966171},
    {0.435, 0.766473284, 0.823677223},
    {0.440, 0.767228637, 0.836501264},
    {0.445, 0.767922367, 0.849440320},
    {0.450, 0.768554777, 0.862496474},
    {0.455, 0.769126141, 0.875671863},
    {0.460, 0.769636707, 0.888968687},
    {0.465, 0.770086694, 0.902389202},
    {0.470, 0.770476295, 0.915935731},
    {0.475, 0.770805677, 0.929610662},
    {0.480, 0.771074980, 0.943416453},
    {0.485, 0.771284319, 0.957355662},
    {0.490, 0.771433784, 0.971430826},
    {0.495, 0.771523437, 0.985644706},
    {0.500, 0.771553318, 0.999999997},
};

// E_W over the subspace spanned by rho_v's support, same provenance.
inline constexpr double kEhatWRhoVGolden = 0.771553313;

#endif
