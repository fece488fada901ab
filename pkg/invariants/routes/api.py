from flask import Blueprint, current_app, jsonify, request

from invariants.exceptions import InvariantsError, ParameterError
from invariants.models import Composition
from invariants.utils.combinat import hilbert_conjecture
from invariants.utils.dickson import Q
from invariants.utils.gfq import get_field
from invariants.utils.solver import orbit_count, verify_hilbert

api = Blueprint('api', __name__, url_prefix='/api')


def _int_arg(name, default=None):
    value = request.args.get(name)
    if value is None:
        if default is None:
            raise ParameterError(f"missing query parameter '{name}'")
        return default
    try:
        return int(value)
    except ValueError:
        raise ParameterError(f"query parameter '{name}' must be an integer, got {value!r}") from None


def _alpha_arg():
    text = request.args.get('alpha')
    if not text:
        raise ParameterError("missing query parameter 'alpha'")
    return Composition.parse(text)


@api.errorhandler(InvariantsError)
def handle_invariants_error(e):
    current_app.logger.error(f"API request failed: {str(e)}")
    return jsonify({'error': str(e)}), 400


@api.route('/dickson', methods=['GET'])
def dickson():
    q, n, i = _int_arg('q', 2), _int_arg('n'), _int_arg('i')
    value = Q(n, i, get_field(q))
    return jsonify({'q': q, 'n': n, 'i': i, 'value': str(value)})


@api.route('/series', methods=['GET'])
def series():
    alpha, m, q = _alpha_arg(), _int_arg('m'), _int_arg('q', 2)
    get_field(q)
    result = hilbert_conjecture(alpha, m, q)
    return jsonify({
        'alpha': str(alpha),
        'm': m,
        'q': q,
        'series': str(result),
        'coefficients': result.to_json(),
        'total': result.total(),
    })


@api.route('/orbits', methods=['GET'])
def orbits():
    alpha, m, q = _alpha_arg(), _int_arg('m'), _int_arg('q', 2)
    count = orbit_count(alpha, m, q,
                        max_points=current_app.config['MAX_ORBIT_POINTS'],
                        max_order=current_app.config['MAX_GROUP_ORDER'])
    return jsonify({'alpha': str(alpha), 'm': m, 'q': q, 'orbits': count})


@api.route('/verify/hilbert', methods=['GET'])
def verify():
    alpha, m, q = _alpha_arg(), _int_arg('m'), _int_arg('q', 2)
    report = verify_hilbert(alpha, m, q, jobs=1,
                            max_monomials=current_app.config['MAX_MONOMIALS'],
                            max_orbit_points=current_app.config['MAX_ORBIT_POINTS'],
                            max_order=current_app.config['MAX_GROUP_ORDER'])
    return jsonify(report)
