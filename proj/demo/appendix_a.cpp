// Worked example: truncated distances around p = 101 among the first 10^4
// primes, R = 5000, M = 50 log bins.
#include <iomanip>
#include <iostream>

#include <logent/logent.hpp>

int main() {
  const logent::PrimeTable table = logent::first_n_primes(10000);
  const auto d = logent::truncated_distances(101.0, table, 5000.0);

  const auto binning = logent::log_bin(d, 50);
  const auto spectrum = logent::log_spectrum(binning);
  const auto report = logent::spectral_entropy(spectrum);

  std::cout << "distances      " << d.size() << " in [" << d.min() << ", " << d.max() << "]\n";
  std::cout << "nonempty bins  ";
  std::size_t nonempty = 0;
  for (auto c : binning.counts) nonempty += c > 0;
  std::cout << nonempty << " / " << binning.M << '\n';
  std::cout << "|mu(1)|        " << std::abs(spectrum.amplitudes.front()) << '\n';
  std::cout << std::setprecision(17) << "H              " << report.H << '\n';
  std::cout << "log M          " << std::log(50.0) << '\n';
}
