#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gabordual/io.hpp"

using namespace gabordual;

namespace {

VectorXcd random_signal(int K, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    VectorXcd f(K);
    for (int n = 0; n < K; ++n) f(n) = cplx(nd(rng), nd(rng));
    return f;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
    for (double v : {0.0, 1.0 / 3.0, -2.718281828459045e-8, 1e300}) {
        CHECK(std::stod(fmt_double(v)) == v);
    }
}

TEST_CASE("signal CSV round trip") {
    VectorXcd f = random_signal(17, 1);
    std::stringstream ss;
    write_signal_csv(ss, f);
    VectorXcd g = read_signal_csv(ss);
    REQUIRE(g.size() == f.size());
    CHECK((f - g).norm() == 0.0);  // 17 digits are lossless

    std::stringstream bad("index,re,im\n0,1,0\n2,3,0\n");
    CHECK_THROWS_AS(read_signal_csv(bad), std::runtime_error);
}

TEST_CASE("signal binary round trip") {
    VectorXcd f = random_signal(33, 2);
    std::stringstream ss;
    write_signal_binary(ss, f);
    VectorXcd g = read_signal_binary(ss);
    REQUIRE(g.size() == f.size());
    CHECK((f - g).norm() == 0.0);

    std::stringstream junk("not a signal file at all");
    CHECK_THROWS_AS(read_signal_binary(junk), std::runtime_error);
    std::stringstream trunc;
    write_signal_binary(trunc, f);
    std::string data = trunc.str();
    std::stringstream cut(data.substr(0, data.size() - 5));
    CHECK_THROWS_AS(read_signal_binary(cut), std::runtime_error);
}

TEST_CASE("sample-set CSV carries the parameters") {
    TpWindow w({1.0, 1.0});
    Lattice lat(1.0, 0.5);
    DualSampleSet set = dual_sampled(w, lat, 2, 4);
    std::stringstream ss;
    write_sample_set_csv(ss, set, "tp:1,1");
    const std::string text = ss.str();
    CHECK(text.find("# window=tp:1,1,alpha=1,beta=0.5,L=2,a=4") !=
          std::string::npos);
    CHECK(text.find("q,t,gamma_value") != std::string::npos);
    // one data line per sample
    long lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == 2 + static_cast<long>(set.values.size()));
}

TEST_CASE("coefficient and trace CSV shapes") {
    DgtCoefficients c;
    c.M = 2;
    c.N = 3;
    c.c = {cplx(1, 2), cplx(3, 4), cplx(5, 6),
           cplx(7, 8), cplx(9, 10), cplx(11, 12)};
    std::stringstream ss;
    write_coefficients_csv(ss, c);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "l,k,re,im");
    std::getline(ss, line);
    CHECK(line == "0,0,1,2");
    std::getline(ss, line);
    CHECK(line == "0,1,3,4");

    IterationTrace tr;
    tr.variant = SchulzVariant::schulz_vector;
    tr.lambda = 0.5;
    tr.records = {{0, 1.0, 2.0}, {1, 0.25, 2.5}};
    std::stringstream ts;
    write_trace_csv(ts, tr);
    std::getline(ts, line);
    CHECK(line == "variant,k,error,gamma_norm");
    std::getline(ts, line);
    CHECK(line == "schulz_vector,0,1,2");
}
