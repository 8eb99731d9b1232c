from phi.derivative import differentiate
from phi.expression import Expression, compile_scalar, evaluate, to_text
from phi.parser import parse_constant, parse_phi
from phi.prescribed import PrescribedFunction, load_phi, validate
