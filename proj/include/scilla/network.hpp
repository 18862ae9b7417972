#ifndef SCILLA_NETWORK_HPP
#define SCILLA_NETWORK_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scilla/runtime.hpp"

namespace scilla {

struct Deployed {
  ContractInstance inst;
  CState state;
};

struct StackEntry {
  Address contract;
  std::string continuation;
  friend bool operator==(const StackEntry&, const StackEntry&) = default;
};

/// Registered contracts plus the global continuation stack. Every contract
/// sees the same block while a network run is in progress.
struct NetworkState {
  std::map<Address, Deployed> contracts;
  std::vector<StackEntry> stack;
  BState block{Uint(1)};

  void deploy(ContractInstance inst);
  Deployed* find(const Address& a);
};

class UnknownAddress : public std::runtime_error {
 public:
  explicit UnknownAddress(const Address& a)
      : std::runtime_error("no contract registered at '" + a.id + "'"), address_(a) {}
  const Address& address() const { return address_; }

 private:
  Address address_;
};

struct NetworkStep {
  Address contract;
  Message input;
  /// Continuation invoked by this step, empty for a transition.
  std::string continuation;
  Step step;
};

enum class NetworkStatus { Completed, BudgetExhausted };

struct NetworkResult {
  NetworkStatus status = NetworkStatus::Completed;
  std::vector<NetworkStep> steps;
  /// Messages addressed to accounts with no registered contract.
  std::vector<Message> deliveries;
  /// Continuations left on the stack when the run went quiet.
  std::vector<StackEntry> dropped;
  std::vector<Diagnostic> diagnostics;
};

/// Delivers `initial` and keeps forwarding the single pending message until
/// none is left or `budget` steps have run. `send` with a continuation pushes
/// it; a `return` message pops the topmost entry and invokes it. Throws
/// UnknownAddress when initial.to is not registered.
NetworkResult run_network(NetworkState& net, const Message& initial, std::size_t budget);

const char* network_status_name(NetworkStatus s);

}  // namespace scilla

#endif  // SCILLA_NETWORK_HPP
