#ifndef GABORDUAL_FFT_HPP
#define GABORDUAL_FFT_HPP

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <vector>

namespace gabordual {

/// Complex in-place DFT of a fixed length (any length; FFTW falls back to
/// Bluestein for awkward sizes). Plans are reused across calls.
class Fft {
public:
    explicit Fft(int n) : n_(n), buf_(static_cast<std::size_t>(n)) {
        if (n < 1) throw std::invalid_argument("Fft: length < 1");
        auto* raw = reinterpret_cast<fftw_complex*>(buf_.data());
        fwd_ = fftw_plan_dft_1d(n_, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n_, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }

    /// out[l] = sum_m in[m] e^{-2 pi i l m / n}
    void forward(std::vector<std::complex<double>>& data) {
        run(fwd_, data);
    }
    /// out[m] = sum_l in[l] e^{+2 pi i l m / n} (unnormalized)
    void backward(std::vector<std::complex<double>>& data) {
        run(bwd_, data);
    }

private:
    void run(fftw_plan plan, std::vector<std::complex<double>>& data) {
        if (static_cast<int>(data.size()) != n_)
            throw std::invalid_argument("Fft: size mismatch");
        std::copy(data.begin(), data.end(), buf_.begin());
        fftw_execute(plan);
        std::copy(buf_.begin(), buf_.end(), data.begin());
    }

    int n_;
    std::vector<std::complex<double>> buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

}  // namespace gabordual

#endif
