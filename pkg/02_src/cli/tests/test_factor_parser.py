"""
Tests for the factor-list grammar.
"""
import pytest

from cli.factor_parser import FactorParseError, parse_factor_list
from isoparametric.catalog import Side


class TestParseFactorList:
    """Tests for parse_factor_list."""

    def test_single_factor(self):
        """g=4 (1, 2) minus is one descriptor of dimension 4."""
        factors = parse_factor_list("g=4,m1=1,m2=2,side=minus")
        assert len(factors) == 1
        assert factors[0].dim == 4
        assert factors[0].side is Side.MINUS

    def test_mixed_list_in_order(self):
        """Focal factors, the m shorthand and spheres keep input order."""
        factors = parse_factor_list("g=4,m1=1,m2=2,side=plus; g=3,m=2; sphere=4")
        assert [f.g for f in factors] == [4, 3, 2]
        assert [f.dim for f in factors] == [5, 4, 4]
        assert (factors[1].m1, factors[1].m2) == (2, 2)

    def test_whitespace_insensitive(self):
        """Spaces around separators are ignored."""
        assert parse_factor_list(" g = 3 , m = 2 ;  sphere = 1 ; ") == parse_factor_list("g=3,m=2;sphere=1")

    def test_side_defaults_to_plus(self):
        """Missing side means plus."""
        assert parse_factor_list("g=4,m1=2,m2=1")[0].side is Side.PLUS

    def test_json_input(self):
        """A JSON list of objects parses to the same descriptors."""
        assert parse_factor_list('[{"g": 3, "m": 2}, {"sphere": 4}]') == parse_factor_list("g=3,m=2; sphere=4")

    @pytest.mark.parametrize(
        "text,message",
        [
            ('[{"g": 3, "m": null}]', "m must be an integer: got null"),
            ('[{"g": 4.9, "m1": 1, "m2": 2}]', "g must be an integer: got 4.9"),
            ('[{"g": 4, "m1": 1.7, "m2": 2}]', "m1 must be an integer: got 1.7"),
            ('[{"g": 4, "m1": "1", "m2": 2}]', 'm1 must be an integer: got "1"'),
            ('[{"g": true, "m": 2}]', "g must be an integer: got true"),
            ('[{"g": 4, "m1": 1, "m2": 2, "side": 1}]', "side must be a string"),
        ],
    )
    def test_json_values_are_not_coerced(self, text, message):
        """JSON integers must be integers: null, floats, strings and booleans are refused."""
        with pytest.raises(FactorParseError, match=message):
            parse_factor_list(text)

    def test_json_float_family_not_truncated(self):
        """A fractional family never parses as its truncation."""
        with pytest.raises(FactorParseError):
            parse_factor_list('[{"g": 4.9, "m1": 1.7, "m2": 2.2, "side": "minus"}]')

    @pytest.mark.parametrize("text", ["", "   ", ";;", "[]"])
    def test_empty(self, text):
        """Empty lists are refused."""
        with pytest.raises(FactorParseError, match="empty factor list"):
            parse_factor_list(text)

    def test_unsupported_g(self):
        """g outside {2, 3, 4, 6} is refused at the factor start."""
        with pytest.raises(FactorParseError, match=r"g must be in \{2,3,4,6\}") as exc:
            parse_factor_list("g=3,m=2; g=5,m=1")
        assert exc.value.offset == 9

    def test_unknown_key_offset(self):
        """Unknown keys report the byte offset of the pair."""
        with pytest.raises(FactorParseError, match="unknown key 'zz'") as exc:
            parse_factor_list("g=4,m1=1,zz=3")
        assert exc.value.offset == 9

    def test_offsets_count_bytes(self):
        """Offsets count UTF-8 bytes, not characters."""
        with pytest.raises(FactorParseError) as exc:
            parse_factor_list("sphere=4;\u00a0g=5,m=1")
        assert exc.value.offset == 11

    def test_invalid_family(self):
        """g = 3 with unequal multiplicities is an invalid family."""
        with pytest.raises(FactorParseError, match="invalid family"):
            parse_factor_list("g=3,m1=1,m2=2")

    @pytest.mark.parametrize(
        "text,message",
        [
            ("g=4,m1=x", "must be an integer"),
            ("g=4,m1", "expected key=value"),
            ("g=4,g=3,m=1", "duplicate key"),
            ("sphere=2,g=3", "cannot be combined"),
            ("g=4,m1=1,side=up", "side must be plus or minus"),
            ("m=2", "needs g or sphere"),
            ("g=3,m=2,m1=2", "either m or m1/m2"),
            ("sphere=0", "must be >= 1"),
        ],
    )
    def test_malformed(self, text, message):
        """Malformed pairs raise FactorParseError with a message."""
        with pytest.raises(FactorParseError, match=message):
            parse_factor_list(text)

    def test_is_value_error(self):
        """FactorParseError is a ValueError."""
        assert issubclass(FactorParseError, ValueError)
