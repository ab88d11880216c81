// Compare the entropy of prime distances around a few base points with a
// Poisson null at the local prime density 1/log p.
#include <cstdio>
#include <cstdlib>

#include <logent/logent.hpp>

int main(int argc, char** argv) {
  const double R = argc > 1 ? std::atof(argv[1]) : 1e4;
  const std::size_t M = 50;
  const logent::PrimeTable table = logent::sieve_up_to(1'000'000 + static_cast<std::uint64_t>(R) + 1);

  std::printf("%10s %12s %12s %10s %8s\n", "p", "H_prime", "null_mean", "delta", "z");
  for (const std::uint64_t p : {1009u, 10007u, 100003u, 999983u}) {
    const auto dev = logent::deviation_profile(p, M, R, table, 1234, 100);
    std::printf("%10llu %12.6f %12.6f %10.5f %8.2f\n", static_cast<unsigned long long>(p), dev.H_prime, dev.null_mean, dev.delta,
                dev.z_score);
  }
}
