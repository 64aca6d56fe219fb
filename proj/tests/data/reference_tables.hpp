#pragma once

#include <array>
#include <vector>

// Reference cofactor rows (i, j, k, c1..c4) at a_i (kTable2) and c_i (kTable3)
// of the default vee joint, as printed to 5 decimals.
struct CofactorRef {
    int i, j, k;
    std::array<double, 4> c;
};

inline const std::vector<CofactorRef> kTable2 = {
    {3, 1, 3, {8.59404, 0.0, -8.59404, 0.0}},
    {3, 4, 2, {0.0, -8.59404, 0.0, 8.59404}},
    {4, 1, 3, {-0.41733, 0.33528, 0.80361, 2.30885}},
    {4, 4, 2, {2.30885, 0.41733, 0.33528, -0.80361}},
    {5, 1, 3, {6.66177, 0.0, -6.66177, 0.0}},
    {5, 4, 2, {0.0, -6.66177, 0.0, 6.66177}},
    {6, 1, 3, {-0.71628, 0.3035, 0.44324, 1.91198}},
    {6, 4, 2, {1.91198, 0.71628, 0.3035, -0.44324}},
    {7, 1, 3, {2.85207, 0.0, -2.85207, 0.0}},
    {7, 4, 2, {0.0, -2.85207, 0.0, 2.85207}},
    {8, 1, 3, {-0.61696, 0.24393, 0.07374, 1.55463}},
    {8, 4, 2, {1.55463, 0.61696, 0.24393, -0.07374}},
    {9, 1, 3, {0.77252, 0.0, -0.77252, 0.0}},
    {9, 4, 2, {0.0, -0.77252, 0.0, 0.77252}},
};

inline const std::vector<CofactorRef> kTable3 = {
    {3, 1, 3, {0.0, 0.58525, 1.1705, -0.58525}},
    {3, 1, 4, {-1.1705, 0.82767, 0.82767, -1.1705}},
    {3, 1, 5, {3.76147, -2.5, -0.22594, -0.82767}},
    {3, 2, 4, {-0.58525, 1.1705, 0.58525, 0.0}},
    {3, 2, 5, {1.99371, -3.76147, -2.81953, -0.58525}},
    {3, 3, 5, {0.22594, -1.99371, -2.81953, -0.58525}},
    {3, 6, 2, {-0.58525, -2.81953, -1.99371, 0.22594}},
    {3, 6, 3, {-0.58525, -2.81953, -3.76147, 1.99371}},
    {3, 6, 4, {-0.82767, -0.22594, -2.5, 3.76147}},
    {4, 1, 3, {-0.33528, 0.59404, -0.05119, 0.51038}},
    {4, 1, 4, {0.76608, -1.44669, -1.23239, 0.05119}},
    {4, 1, 5, {-8.74266, 2.68468, 5.8525, 1.23239}},
    {4, 2, 4, {0.58525, -0.76608, 0.43379, -0.33528}},
    {4, 2, 5, {-1.81265, 8.74266, 1.5606, -0.43379}},
    {4, 3, 5, {-8.59404, 1.81265, -0.70448, 0.58525}},
    {4, 6, 2, {0.51038, 1.5606, 1.69265, -5.8525}},
    {4, 6, 3, {-0.59404, -0.70448, 6.9817, -1.69265}},
    {4, 6, 4, {1.44669, 8.59404, 2.68468, -6.9817}},
    {5, 1, 3, {0.0, 0.60232, 1.20464, -0.60232}},
    {5, 1, 4, {-1.02075, 0.75749, 0.90848, -1.20464}},
    {5, 1, 5, {4.03705, -2.59407, -0.4859, -0.90848}},
    {5, 2, 4, {-0.51038, 1.02075, 0.51038, 0.0}},
    {5, 2, 5, {2.24424, -4.03705, -2.94953, -0.51038}},
    {5, 3, 5, {0.45144, -2.24424, -2.94953, -0.51038}},
    {5, 6, 2, {-0.60232, -2.94953, -2.16539, 0.4859}},
    {5, 6, 3, {-0.60232, -2.94953, -3.84487, 2.16539}},
    {5, 6, 4, {-0.75749, -0.45144, -2.59407, 3.84487}},
    {6, 1, 3, {-0.3035, 0.51211, 0.01981, 0.40684}},
    {6, 1, 4, {0.74052, -1.21021, -0.96521, -0.01981}},
    {6, 1, 5, {-8.05564, 3.42714, 2.58024, 0.96521}},
    {6, 2, 4, {0.60232, -0.74052, 0.42056, -0.3035}},
    {6, 2, 5, {-2.30925, 8.05564, 2.2712, -0.42056}},
    {6, 3, 5, {-7.47104, 2.30925, -1.5863, 0.60232}},
    {6, 6, 2, {0.40684, 2.2712, 1.7059, -2.58024}},
    {6, 6, 3, {-0.51211, -1.5863, 3.16484, -1.7059}},
    {6, 6, 4, {1.21021, 7.47104, 3.42714, -3.16484}},
    {7, 1, 3, {0.0, 0.47523, 0.95047, -0.47523}},
    {7, 1, 4, {-0.81367, 0.64191, 0.68417, -0.95047}},
    {7, 1, 5, {3.5498, -2.55177, -0.50634, -0.68417}},
    {7, 2, 4, {-0.40684, 0.81367, 0.40684, 0.0}},
    {7, 2, 5, {1.92279, -3.5498, -2.76682, -0.40684}},
    {7, 3, 5, {0.29578, -1.92279, -2.76682, -0.40684}},
    {7, 6, 2, {-0.47523, -2.76682, -2.26319, 0.50634}},
    {7, 6, 3, {-0.47523, -2.76682, -4.02004, 2.26319}},
    {7, 6, 4, {-0.64191, -0.29578, -2.55177, 4.02004}},
    {8, 1, 3, {-0.24393, 0.3884, -0.17522, 0.35487}},
    {8, 1, 4, {0.39661, -0.97287, -0.8857, 0.17522}},
    {8, 1, 5, {-4.53551, 4.14925, 0.77252, 0.8857}},
    {8, 2, 4, {0.47523, -0.39661, 0.42976, -0.24393}},
    {8, 2, 5, {-2.04962, 4.53551, 1.44239, -0.42976}},
    {8, 3, 5, {-3.1239, 2.04962, -0.43166, 0.47523}},
    {8, 6, 2, {0.35487, 1.44239, 1.66866, -0.77252}},
    {8, 6, 3, {-0.3884, -0.43166, 1.66941, -1.66866}},
    {8, 6, 4, {0.97287, 3.1239, 4.14925, -1.66941}},
    {9, 1, 3, {0.0, 0.35487, 0.70974, -0.35487}},
    {9, 1, 4, {-0.70974, 0.50186, 0.50186, -0.70974}},
    {9, 1, 5, {3.57331, -2.48504, -0.05893, -0.50186}},
    {9, 2, 4, {-0.35487, 0.70974, 0.35487, 0.0}},
    {9, 2, 5, {1.81612, -3.57331, -2.56838, -0.35487}},
    {9, 3, 5, {0.05893, -1.81612, -2.56838, -0.35487}},
    {9, 6, 2, {-0.35487, -2.56838, -1.81612, 0.05893}},
    {9, 6, 3, {-0.35487, -2.56838, -3.57331, 1.81612}},
    {9, 6, 4, {-0.50186, -0.05893, -2.48504, 3.57331}},
};
