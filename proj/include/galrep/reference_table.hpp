#pragma once

#include <array>
#include <utility>

#include "galrep/common.hpp"

namespace galrep {

/// Published eigensystem totals for every prime p <= 211: the number of
/// odd semisimple two-dimensional Galois representations mod p unramified
/// outside p. Embedded so the check mode needs no external files.
inline constexpr std::array<std::pair<u32, u64>, 47> kReferenceTable{{
    {2, 1},     {3, 1},     {5, 4},      {7, 9},      {11, 35},
    {13, 48},   {17, 112},  {19, 153},   {23, 264},   {29, 532},
    {31, 630},  {37, 1044}, {41, 1480},  {43, 1701},  {47, 2185},
    {53, 3172}, {59, 4234}, {61, 4800},  {67, 6237},  {71, 7420},
    {73, 8136}, {79, 10257},{83, 12054}, {89, 14784}, {97, 19200},
    {101, 21600}, {103, 22797}, {107, 25546}, {109, 27216}, {113, 30240},
    {127, 42903}, {131, 46735}, {137, 53992}, {139, 55752}, {149, 69264},
    {151, 71700}, {157, 80340}, {163, 90477}, {167, 97276}, {173, 108016},
    {179, 119705}, {181, 124020}, {191, 145445}, {193, 150144},
    {197, 160132}, {199, 164637}, {211, 196560},
}};

}  // namespace galrep
