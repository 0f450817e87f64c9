// Published 6x24 design matrix for T = 4, copied by hand; rows in pair order
// 12, 13, 21, 23, 31, 32, columns in lexicographic word order.

#pragma once

#include <array>
#include <string_view>

namespace thmc::reference {

inline constexpr std::array<std::string_view, 24> kA4Words = {
    "1212", "1213", "1231", "1232", "1312", "1313", "1321", "1323", "2121", "2123", "2131", "2132",
    "2312", "2313", "2321", "2323", "3121", "3123", "3131", "3132", "3212", "3213", "3231", "3232"};

inline constexpr int kA4[6][24] = {
    {2, 1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0},
    {0, 1, 0, 0, 1, 2, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0},
    {1, 1, 0, 0, 0, 0, 1, 0, 2, 1, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0},
    {0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 2, 0, 1, 0, 0, 0, 0, 1, 1},
    {0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 2, 1, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 2},
};

}  // namespace thmc::reference
