#ifndef GABORDUAL_IO_HPP
#define GABORDUAL_IO_HPP

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gabordual/discrete.hpp"
#include "gabordual/dual.hpp"
#include "gabordual/schulz.hpp"

namespace gabordual {

/// 17 significant digits: round-trip exact for binary64.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_sample_set_csv(std::ostream& os, const DualSampleSet& set,
                                 const std::string& window_desc) {
    os << "# window=" << window_desc << ",alpha=" << fmt_double(set.lattice.alpha)
       << ",beta=" << fmt_double(set.lattice.beta) << ",L=" << set.L
       << ",a=" << set.a << "\n";
    os << "q,t,gamma_value\n";
    for (long q = set.q0; q <= set.q_end(); ++q)
        os << q << "," << fmt_double(q * set.step()) << ","
           << fmt_double(set.value(q)) << "\n";
}

inline void write_signal_csv(std::ostream& os, const VectorXcd& f) {
    os << "index,re,im\n";
    for (long i = 0; i < f.size(); ++i)
        os << i << "," << fmt_double(f(i).real()) << ","
           << fmt_double(f(i).imag()) << "\n";
}

inline VectorXcd read_signal_csv(std::istream& is) {
    std::vector<cplx> vals;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0)
            continue;
        std::istringstream ls(line);
        std::string tok;
        long idx;
        double re = 0.0, im = 0.0;
        if (!std::getline(ls, tok, ',')) continue;
        idx = std::stol(tok);
        if (std::getline(ls, tok, ',')) re = std::stod(tok);
        if (std::getline(ls, tok, ',')) im = std::stod(tok);
        if (idx != static_cast<long>(vals.size()))
            throw std::runtime_error("read_signal_csv: non-contiguous indices");
        vals.emplace_back(re, im);
    }
    VectorXcd f(static_cast<long>(vals.size()));
    for (long i = 0; i < f.size(); ++i) f(i) = vals[static_cast<std::size_t>(i)];
    return f;
}

inline void write_coefficients_csv(std::ostream& os, const DgtCoefficients& c) {
    os << "l,k,re,im\n";
    for (int l = 0; l < c.M; ++l)
        for (int k = 0; k < c.N; ++k)
            os << l << "," << k << "," << fmt_double(c.at(l, k).real()) << ","
               << fmt_double(c.at(l, k).imag()) << "\n";
}

inline void write_trace_csv(std::ostream& os, const IterationTrace& tr) {
    os << "variant,k,error,gamma_norm\n";
    for (const auto& r : tr.records)
        os << variant_name(tr.variant) << "," << r.k << "," << fmt_double(r.error)
           << "," << fmt_double(r.gamma_norm) << "\n";
}

// Binary signal format: 16-byte header (magic "GDK1", u32 K, u32 flags,
// u32 reserved), then K little-endian f64 pairs (re, im). flags bit 0:
// imaginary parts present.
constexpr std::uint32_t kBinaryFlagComplex = 1u;

inline void write_signal_binary(std::ostream& os, const VectorXcd& f) {
    const char magic[4] = {'G', 'D', 'K', '1'};
    const std::uint32_t K = static_cast<std::uint32_t>(f.size());
    const std::uint32_t flags = kBinaryFlagComplex;
    const std::uint32_t reserved = 0;
    os.write(magic, 4);
    os.write(reinterpret_cast<const char*>(&K), 4);
    os.write(reinterpret_cast<const char*>(&flags), 4);
    os.write(reinterpret_cast<const char*>(&reserved), 4);
    for (long i = 0; i < f.size(); ++i) {
        const double re = f(i).real(), im = f(i).imag();
        os.write(reinterpret_cast<const char*>(&re), 8);
        os.write(reinterpret_cast<const char*>(&im), 8);
    }
}

inline VectorXcd read_signal_binary(std::istream& is) {
    char magic[4];
    std::uint32_t K = 0, flags = 0, reserved = 0;
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "GDK1", 4) != 0)
        throw std::runtime_error("read_signal_binary: bad magic");
    is.read(reinterpret_cast<char*>(&K), 4);
    is.read(reinterpret_cast<char*>(&flags), 4);
    is.read(reinterpret_cast<char*>(&reserved), 4);
    VectorXcd f(static_cast<long>(K));
    for (std::uint32_t i = 0; i < K; ++i) {
        double re = 0.0, im = 0.0;
        is.read(reinterpret_cast<char*>(&re), 8);
        if (flags & kBinaryFlagComplex) is.read(reinterpret_cast<char*>(&im), 8);
        f(static_cast<long>(i)) = cplx(re, im);
    }
    if (!is) throw std::runtime_error("read_signal_binary: truncated file");
    return f;
}

}  // namespace gabordual

#endif
