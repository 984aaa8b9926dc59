// Builds the so(5) extended Jordanian twist, twists the deformed carrier
// generator E_BO, and checks the twisted coproduct against the Borel-invariant
// form E_BO (x) 1 + 1 (x) E_BO. Then adds the second Jordanian factor on E_BO
// and prints the resulting coproduct of E_BO and the R-matrix unitarity.

#include <iostream>

#include "twistlab/twist.hpp"
#include "twistlab/verify.hpp"

int main() {
  using namespace twistlab;
  const AlgebraRep rep = build_so5();

  const TwistChain ej = preset_chain("so5:EJ");
  const TwistChain bjej = preset_chain("so5:BJEJ");
  const Expr e_bo = deformed_generator(rep, carrier_config("so5"));

  std::cout << "E_BO = " << e_bo.to_string() << "\n";
  std::cout << "factors of " << bjej.name << ":";
  for (const auto& f : bjej.factors) std::cout << " " << f.label;
  std::cout << "\n";

  for (const CheckReport& r : {check_cocycle(ej, rep), check_primitive(ej, e_bo, rep, "E_BO"),
                               check_primitive(bjej, e_bo, rep, "E_BO"), check_unitarity(r_matrix(bjej, rep), bjej.name)})
    std::cout << r.name << ": " << to_string(r.status) << " residual " << r.residual << "\n";

  const FieldMatrix d = twisted_coproduct(bjej, e_bo, rep);
  std::cout << "Delta(E_BO) under " << bjej.name << ": " << d.shape() << ", " << d.nonzeros()
            << " nonzero entries\n";
  return 0;
}
