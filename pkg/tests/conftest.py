import pytest

from wcpx.fields import QQ, prime_field

F5 = prime_field(5)


@pytest.fixture(params=[QQ, F5], ids=["Q", "F5"])
def field(request):
    return request.param
