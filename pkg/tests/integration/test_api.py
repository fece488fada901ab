import pytest

from invariants import create_app


class TestConfig:
    TESTING = True
    MAX_MONOMIALS = 20000
    MAX_ORBIT_POINTS = 10 ** 6
    MAX_GROUP_ORDER = 12000


@pytest.fixture
def client():
    app = create_app(TestConfig)
    with app.test_client() as client:
        yield client


def test_index_lists_endpoints(client):
    response = client.get('/')
    assert response.status_code == 200
    assert '/api/series' in response.get_json()['endpoints']


def test_dickson(client):
    response = client.get('/api/dickson?q=2&n=2&i=1')
    assert response.status_code == 200
    assert response.get_json()['value'] == "x1^2 + x1*x2 + x2^2"


def test_series(client):
    data = client.get('/api/series?alpha=1&m=2&q=2').get_json()
    assert data['series'] == "1 + t + t^2 + t^3"
    assert data['total'] == 4


def test_orbits(client):
    data = client.get('/api/orbits?alpha=2&m=2&q=2').get_json()
    assert data['orbits'] == 5


def test_verify_hilbert(client):
    data = client.get('/api/verify/hilbert?alpha=1,1&m=2&q=2').get_json()
    assert data['equal']
    assert data['totals']['orbits'] == 10


@pytest.mark.parametrize('url', [
    '/api/dickson?q=2&n=2',
    '/api/dickson?q=2&n=two&i=1',
    '/api/series?alpha=1,x&m=2',
    '/api/series?m=2',
    '/api/series?alpha=2&m=2&q=6',
])
def test_bad_parameters_are_rejected(client, url):
    response = client.get(url)
    assert response.status_code == 400
    assert 'error' in response.get_json()


def test_work_guard_is_a_client_error(client):
    response = client.get('/api/verify/hilbert?alpha=3,1&m=3&q=3')
    assert response.status_code == 400
