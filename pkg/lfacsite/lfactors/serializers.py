from rest_framework import serializers  # DRF проверяет структуру файла каталога


class BlockTemplateSerializer(serializers.Serializer):
    """
    Шаблон блока: характер-одночлен от параметров типа, необязательная
    неприводимая часть и индекс n в sp(n).
    """
    char = serializers.DictField(child=serializers.IntegerField(), default=dict)  # {параметр: степень}
    irred = serializers.CharField(default=None, allow_null=True)  # имя irred2-параметра или null
    n = serializers.IntegerField(min_value=0)  # индекс в sp(n)


class ConstraintSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=["nontrivial_quadratic", "trivial_det"])  # вид ограничения на параметр
    param = serializers.CharField()


class TypeEntrySerializer(serializers.Serializer):
    """Один тип Салли-Тадича в файле каталога."""
    note = serializers.CharField(default="", allow_blank=True)  # пояснение, в вычислениях не участвует
    params = serializers.DictField(child=serializers.ChoiceField(choices=["character", "irred2"]))
    blocks = BlockTemplateSerializer(many=True)
    similitude = serializers.DictField(child=serializers.IntegerField())  # одночлен характера подобия
    constraints = ConstraintSerializer(many=True, default=list)

    def validate(self, attrs):
        params = attrs["params"]
        monomials = [block["char"] for block in attrs["blocks"]] + [attrs["similitude"]]
        for monomial in monomials:
            for key in monomial:
                name = key[4:] if key.startswith("det:") else key
                if name not in params:
                    raise serializers.ValidationError(f"unknown parameter {name!r}")
                if key.startswith("det:") and params[name] != "irred2":
                    raise serializers.ValidationError(f"det:{name} needs an irred2 parameter")
                if not key.startswith("det:") and params[name] != "character":
                    raise serializers.ValidationError(f"{name!r} is not a character parameter")
        for block in attrs["blocks"]:
            irred = block["irred"]
            if irred is not None and params.get(irred) != "irred2":
                raise serializers.ValidationError(f"block part {irred!r} must be an irred2 parameter")
        for constraint in attrs["constraints"]:
            if constraint["param"] not in params:
                raise serializers.ValidationError(f"constraint on unknown parameter {constraint['param']!r}")
        return attrs


class CatalogSerializer(serializers.Serializer):
    """Весь файл каталога: формат, версия, источник и типы."""
    format = serializers.ChoiceField(choices=["lfac-catalog"])
    version = serializers.IntegerField(min_value=1, max_value=1)  # пока поддерживается только версия 1
    source = serializers.CharField()
    types = serializers.DictField(child=TypeEntrySerializer())  # {тип: запись}
