from rest_framework import serializers  # сериализаторы DRF формируют весь JSON-вывод lfac

from lfactors.wdrep import Character


class ScalarField(serializers.Field):
    """
    Скаляр в JSON - всегда строка канонической записи.
    Числа JSON не используются, чтобы точность не терялась.
    """

    def to_representation(self, value):
        return str(value)


class CharacterSerializer(serializers.Serializer):
    """Характер: тег ветвления и параметр Сатаке."""
    text = serializers.SerializerMethodField()  # каноническая запись unr(...) / ram(...)
    tag = serializers.SerializerMethodField()  # [[имя, степень], ...], пусто у неразветвлённых
    satake = ScalarField()  # параметр Сатаке (для разветвлённых - учётный твист)

    def get_text(self, obj):
        return str(obj)

    def get_tag(self, obj):
        return [[name, exponent] for name, exponent in obj.tag]


class IrredPartSerializer(serializers.Serializer):
    """Формальная неприводимая часть размерности >= 2."""
    text = serializers.SerializerMethodField()
    dim = serializers.IntegerField()  # размерность части, не меньше 2
    label = serializers.CharField()  # метка формальной части, например l
    det = CharacterSerializer()  # определитель части
    sim = CharacterSerializer(allow_null=True)  # характер подобия симплектической части или null
    twist = CharacterSerializer()  # неразветвлённый твист, учтённый в части
    dual_label = serializers.BooleanField()  # True у контрагредиентной части

    def get_text(self, obj):
        return str(obj)


def part_data(part) -> dict:
    if isinstance(part, Character):
        return {"kind": "character", **CharacterSerializer(part).data}
    return {"kind": "irred", **IrredPartSerializer(part).data}


class BlockSerializer(serializers.Serializer):
    part = serializers.SerializerMethodField()  # характер или неприводимая часть
    n = serializers.IntegerField()  # индекс в sp(n)

    def get_part(self, obj):
        return part_data(obj.part)


class WDRepSerializer(serializers.Serializer):
    text = serializers.SerializerMethodField()
    dim = serializers.IntegerField()  # размерность представления
    blocks = BlockSerializer(many=True)  # блоки в каноническом порядке

    def get_text(self, obj):
        return str(obj)


class SplitRationalSerializer(serializers.Serializer):
    """unit * X^xpower * prod (1 - root*X)^exponent."""
    text = serializers.SerializerMethodField()
    unit = ScalarField()  # скалярный множитель перед произведением
    xpower = serializers.IntegerField()  # степень X, у L-факторов ноль
    factors = serializers.SerializerMethodField()  # [{root, exponent}, ...] по возрастанию корня

    def get_text(self, obj):
        return str(obj)

    def get_factors(self, obj):
        return [{"root": str(root), "exponent": exponent} for root, exponent in obj.factors]


class Gl2ParamSerializer(serializers.Serializer):
    text = serializers.SerializerMethodField()
    kind = serializers.CharField(source="kind.value")  # principal-series, steinberg-twist или supercuspidal
    rep = WDRepSerializer()  # параметр Ленглендса
    central = CharacterSerializer()  # центральный характер
    reducible = serializers.BooleanField()  # True, если главная серия приводима

    def get_text(self, obj):
        return str(obj)


class Gsp4ParamSerializer(serializers.Serializer):
    text = serializers.SerializerMethodField()
    type = serializers.CharField(source="st_type.value")  # тип Салли-Тадича или FREE
    rep = WDRepSerializer()  # параметр Ленглендса
    similitude = CharacterSerializer()  # характер подобия chi_pi

    def get_text(self, obj):
        return str(obj)


class PoleEntrySerializer(serializers.Serializer):
    root = ScalarField()  # обратный корень beta = q^{s0}
    kind = serializers.CharField(source="kind.value")  # exceptional, subregular-case1, ...
    witness = BlockSerializer()  # слагаемое параметра, дающее полюс
    multiplicity = serializers.IntegerField()  # кратность слагаемого-свидетеля
    bessel = serializers.SerializerMethodField()  # (lambda1, lambda2) или null
    generic = serializers.BooleanField()  # классификация верна лишь в общем положении

    def get_bessel(self, obj):
        if obj.bessel is None:
            return None
        return [CharacterSerializer(chi).data for chi in obj.bessel]


class PoleReportSerializer(serializers.Serializer):
    entries = PoleEntrySerializer(many=True)  # отсортированы по корню


class CheckFailureSerializer(serializers.Serializer):
    seed = serializers.IntegerField(allow_null=True)  # seed испытания, воспроизводит контрпример
    counterexample = serializers.CharField()  # входы испытания в синтаксисе DSL
    detail = serializers.CharField()  # что именно не совпало


class CheckReportSerializer(serializers.Serializer):
    identity = serializers.CharField()  # имя проверяемого тождества
    trials = serializers.IntegerField()  # число проведённых испытаний
    passed = serializers.BooleanField()  # True, если расхождений нет
    failures = CheckFailureSerializer(many=True)  # контрпримеры в порядке seed
