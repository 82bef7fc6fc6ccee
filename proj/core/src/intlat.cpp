#include "strata/intlat.hpp"

#include <algorithm>
#include <cstdlib>

namespace strata::intlat {

namespace {

void drop_zero_rows(Mat& a) {
    a.erase(std::remove_if(a.begin(), a.end(), [](const Row& r) {
                return std::all_of(r.begin(), r.end(), [](long long v) { return v == 0; });
            }),
            a.end());
}

} // namespace

Mat hnf(Mat a) {
    drop_zero_rows(a);
    if (a.empty()) return a;
    const int ncols = static_cast<int>(a[0].size());
    const int nrows = static_cast<int>(a.size());
    int r = 0;
    for (int col = 0; col < ncols && r < nrows; ++col) {
        // gcd-eliminate below row r in this column
        while (true) {
            int piv = -1;
            for (int i = r; i < nrows; ++i)
                if (a[i][col] != 0 && (piv < 0 || std::llabs(a[i][col]) < std::llabs(a[piv][col])))
                    piv = i;
            if (piv < 0) break;
            std::swap(a[r], a[piv]);
            bool clean = true;
            for (int i = r + 1; i < nrows; ++i) {
                if (a[i][col] == 0) continue;
                const long long q = a[i][col] / a[r][col];
                for (int j = 0; j < ncols; ++j) a[i][j] -= q * a[r][j];
                if (a[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[r][col] == 0) continue;
        if (a[r][col] < 0)
            for (int j = 0; j < ncols; ++j) a[r][j] = -a[r][j];
        for (int i = 0; i < r; ++i) {
            long long q = a[i][col] / a[r][col];
            if (a[i][col] % a[r][col] < 0) q -= 1;  // floor division for range [0, pivot)
            if (q != 0)
                for (int j = 0; j < ncols; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    a.resize(static_cast<std::size_t>(r));
    return a;
}

int rank(const Mat& a, int ncols) {
    Mat h = a;
    for (Row& row : h) row.resize(static_cast<std::size_t>(ncols), 0);
    return static_cast<int>(hnf(std::move(h)).size());
}

Mat kernel(const Mat& a, int ncols) {
    const int m = static_cast<int>(a.size());
    // rows of b: (j-th column of a | e_j); integer row-reduce the left part
    Mat b(static_cast<std::size_t>(ncols), Row(static_cast<std::size_t>(m + ncols), 0));
    for (int j = 0; j < ncols; ++j) {
        for (int i = 0; i < m; ++i) b[j][i] = a[i][j];
        b[j][m + j] = 1;
    }
    int r = 0;
    for (int col = 0; col < m && r < ncols; ++col) {
        while (true) {
            int piv = -1;
            for (int i = r; i < ncols; ++i)
                if (b[i][col] != 0 && (piv < 0 || std::llabs(b[i][col]) < std::llabs(b[piv][col])))
                    piv = i;
            if (piv < 0) break;
            std::swap(b[r], b[piv]);
            bool clean = true;
            for (int i = r + 1; i < ncols; ++i) {
                if (b[i][col] == 0) continue;
                const long long q = b[i][col] / b[r][col];
                for (int j = 0; j < m + ncols; ++j) b[i][j] -= q * b[r][j];
                if (b[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (b[r][col] != 0) ++r;
    }
    Mat ker;
    for (int i = r; i < ncols; ++i)
        ker.emplace_back(b[i].begin() + m, b[i].end());
    return hnf(std::move(ker));
}

std::vector<long long> snf_divisors(Mat a, int ncols) {
    drop_zero_rows(a);
    std::vector<long long> out;
    if (a.empty()) return out;
    const int nrows = static_cast<int>(a.size());
    for (Row& row : a) row.resize(static_cast<std::size_t>(ncols), 0);
    int t = 0;
    while (t < nrows && t < ncols) {
        // find smallest nonzero entry in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < nrows; ++i)
            for (int j = t; j < ncols; ++j)
                if (a[i][j] != 0 && (pi < 0 || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
                    pi = i; pj = j;
                }
        if (pi < 0) break;
        std::swap(a[t], a[pi]);
        for (Row& row : a) std::swap(row[t], row[pj]);
        bool again = false;
        for (int i = t + 1; i < nrows; ++i) {
            if (a[i][t] == 0) continue;
            const long long q = a[i][t] / a[t][t];
            for (int j = t; j < ncols; ++j) a[i][j] -= q * a[t][j];
            if (a[i][t] != 0) again = true;
        }
        for (int j = t + 1; j < ncols; ++j) {
            if (a[t][j] == 0) continue;
            const long long q = a[t][j] / a[t][t];
            for (int i = t; i < nrows; ++i) a[i][j] -= q * a[i][t];
            if (a[t][j] != 0) again = true;
        }
        if (again) continue;
        // divisibility fix: a[t][t] must divide everything below-right
        bool fixed = true;
        for (int i = t + 1; i < nrows && fixed; ++i)
            for (int j = t + 1; j < ncols && fixed; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (int jj = t; jj < ncols; ++jj) a[t][jj] += a[i][jj];
                    fixed = false;
                }
        if (!fixed) continue;
        out.push_back(std::llabs(a[t][t]));
        ++t;
    }
    return out;
}

bool lattice_contains(const Mat& sup, const Mat& sub, int ncols) {
    Mat stacked = sup;
    for (const Row& r : sub) stacked.push_back(r);
    for (Row& row : stacked) row.resize(static_cast<std::size_t>(ncols), 0);
    Mat hs = sup;
    for (Row& row : hs) row.resize(static_cast<std::size_t>(ncols), 0);
    return hnf(std::move(stacked)) == hnf(std::move(hs));
}

} // namespace strata::intlat
