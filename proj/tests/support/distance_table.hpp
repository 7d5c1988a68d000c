#pragma once

// The published between/within 1-Wasserstein distance table for the twelve
// 2021 Super League teams, as printed (two decimals). Row = attacking team,
// column = opponent; `all` is the team-overall vs whole-league distance.
// Used to check that the summary-statistics layout reproduces the printed
// row/column aggregates.

#include <array>
#include <string>

namespace testdata {

inline constexpr int kTeamCount = 12;

inline const std::array<std::string, kTeamCount> kTeams = {
    "Cas", "Cat", "Hud", "Hul", "HKR", "Lee",
    "Lei", "Sal", "StH", "Wak", "War", "Wig"};

inline constexpr std::array<double, kTeamCount> kAllColumn = {
    3.07, 1.08, 3.38, 1.38, 2.12, 2.27, 2.61, 2.36, 1.60, 1.85, 1.72, 1.34};

// -1 marks the diagonal (a team never faces itself).
inline constexpr double kWithin[kTeamCount][kTeamCount] = {
    {-1.00, 4.02, 6.64, 4.74, 5.19, 5.36, 4.29, 3.38, 5.48, 2.48, 2.88, 3.17},
    {6.21, -1.00, 3.00, 2.76, 3.17, 10.16, 4.59, 8.27, 6.63, 1.87, 4.27, 4.85},
    {4.45, 1.69, -1.00, 3.85, 2.77, 2.77, 3.99, 2.24, 11.90, 4.43, 2.96, 5.21},
    {2.75, 9.30, 4.79, -1.00, 4.34, 2.55, 4.19, 4.63, 6.83, 4.12, 7.61, 4.05},
    {7.04, 5.86, 3.32, 6.77, -1.00, 2.00, 4.76, 4.27, 10.58, 2.82, 6.19, 2.68},
    {5.32, 7.22, 4.68, 3.35, 3.06, -1.00, 7.49, 3.82, 6.28, 2.63, 5.24, 7.74},
    {15.00, 6.31, 3.10, 9.56, 2.26, 6.05, -1.00, 3.39, 3.86, 3.72, 4.86, 3.47},
    {5.51, 2.83, 7.11, 4.31, 3.63, 5.03, 2.09, -1.00, 5.20, 7.03, 5.49, 3.87},
    {5.47, 6.11, 4.63, 3.71, 7.37, 4.14, 2.73, 2.83, -1.00, 1.86, 2.61, 3.91},
    {4.43, 4.93, 3.16, 4.81, 3.08, 4.84, 6.25, 5.25, 3.28, -1.00, 7.08, 3.09},
    {3.72, 9.21, 2.56, 4.46, 5.08, 2.50, 3.48, 3.03, 4.57, 5.45, -1.00, 4.28},
    {3.60, 10.56, 2.02, 3.27, 3.38, 4.74, 4.49, 5.70, 6.26, 2.20, 3.91, -1.00},
};

inline constexpr std::array<double, kTeamCount> kRowMean = {
    4.33, 5.07, 4.20, 5.01, 5.12, 5.17, 5.60, 4.74, 4.12, 4.56, 4.40, 4.56};
inline constexpr std::array<double, kTeamCount> kRowSd = {
    1.28, 2.54, 2.76, 2.06, 2.51, 1.84, 3.73, 1.59, 1.67, 1.34, 1.87, 2.38};

inline constexpr std::array<double, kTeamCount> kColMean = {
    5.77, 6.19, 4.09, 4.69, 3.94, 4.56, 4.40, 4.26, 6.44, 3.51, 4.83, 4.21};
inline constexpr std::array<double, kTeamCount> kColSd = {
    3.30, 2.77, 1.64, 1.94, 1.47, 2.30, 1.49, 1.69, 2.64, 1.64, 1.69, 1.39};

inline constexpr double kAllMean = 2.07;
inline constexpr double kAllSd = 0.71;

}  // namespace testdata
