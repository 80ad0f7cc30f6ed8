#pragma once

// Expected contents of the shipped prompt files.

#include <array>
#include <string_view>
#include <utility>

namespace frozen {

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kPrompts = {{
    {"00_base.txt", R"(Contexte : Vous devez créer des transcriptions de dialogues pour une commission d'enquête au Québec sur le processus de nomination judiciaire. Le sujet inclut l'influence potentielle de tiers et les critères de sélection des juges des cours municipales et des membres du Tribunal administratif du Québec. Les échanges se font en français québécois, reflétant le registre et les nuances culturelles de cette langue.

Instructions :
1. Créez des dialogues réalistes et centrés sur le sujet principal, permettant de couvrir différentes dimensions du processus de nomination judiciaire.
2. Intégrez des détails concrets dans les échanges, tels que des dates précises, années, numéros d'articles de loi, références de documents déposés, noms de villes, lieux, partis politiques, montants financiers, et procédures spécifiques.
3. Variez les intervenants, incluant :
   - Le président de la commission
   - Des experts juridiques
   - Des témoins
   - Des citoyens ou parties prenantes
4. Indiquez seulement le prénom et le nom de chaque intervenant, suivi de leur texte dans la transcription.
5. Assurez-vous que les échanges incluent aussi des réponses très courtes et naturelles de quelques mots, pour refléter des dialogues réalistes.
6. Gardez les conversations pertinentes au thème principal, tout en explorant des sous-thèmes comme :
   - Critères de qualification et éthique
   - Influence politique et externe
   - Transparence et responsabilité
7. Structurez le texte pour qu'il reflète un échange continu sans introductions ni conclusions formelles.
8. Adaptez le registre de langue selon les participants :
   - Un ton formel pour le président et les experts
   - Un langage plus spontané pour les témoins et citoyens
9. Intégrez des variations émotionnelles et subtilités culturelles pour rendre les échanges vivants, toujours sous forme de dialogue.
10. Respectez les conventions d'écriture :
   - Évitez les abréviations (ex. “Monsieur” au lieu de “M.”)
   - Écrivez les nombres en toutes lettres
   - Maintenez une mise en page claire

Exemple de format à respecter :
Président : “Quelle est votre opinion sur l'indépendance judiciaire dans le processus de nomination ?”

Madame Tremblay : “Je crois fermement que le processus doit être transparent et exempt de toute influence...”

Monsieur Giguère : “C'est exact.”
)"},
    {"01_continuation.txt", R"(Instructions :
1. Continuez les dialogues en gardant bien à l'esprit que le sujet principal est le processus de nomination des juges au Québec.
2. Maintenez le flux de la conversation, en développant progressivement les idées et les arguments de manière approfondie avec un vocabulaire approprié à une commission d'enquête.
3. Continuez de structurer le texte pour qu’il reflète un échange continu sans introductions ni conclusions, typique d'une commission d'enquête.
4. Produisez une variété de dialogues, alternant entre des échanges courts et d'autres plus approfondis.
5. Explorez de nouveaux aspects du sujet si le précédent est épuisé, et introduisez de nouveaux participants au besoin, sans forcer des conclusions précipitées.
)"},
    {"02_facts.txt", R"(Instructions :
1. Continuez le dialogue en vous concentrant sur le développement de faits passés, en questionnant les témoins et les experts à ce sujet.
2. Concentrez-vous sur la génération de témoignages détaillés et de dialogues investigatifs, en explorant des sujets spécifiques avec des faits concrets.
3. Formulez des questions précises sur des événements antérieurs liés au processus de nomination des juges, sollicitant des détails et clarifications.
4. Maintenez un ton investigatif, s'assurant que la conversation demeure engagée et directement liée aux faits examinés.
)"},
    {"03_familiar_language.txt", R"(Instructions :
1. Continuez le dialogue en intégrant des échanges plus spontanés et familiers, surtout pour les témoins et les citoyens.
2. Utilisez un langage qui reflète les nuances et le ton informel du français québécois, en vous éloignant d’un registre trop formel.
3. Encouragez les participants à répondre avec des expressions courantes et des réactions naturelles pour rendre les interactions plus authentiques.
4. Maintenez le focus général sur le processus de nomination des juges, mais avec une approche plus décontractée de la conversation.
)"},
    {"04_short_answers.txt", R"(Instructions :
1. Continuez le dialogue en encourageant des réponses très courtes et des échanges rapides entre les participants incluant des réponses simples de quelques mots.
2. Introduisez de nouvelles voix ou perspectives si nécessaire, mais maintenez un échange très rapide et concis.
3. Assurez-vous que le ton et le style restent conformes au français québécois.
4. Assurez-vous que les interactions restent centrées sur le processus de nomination des juges au Québec, tout en intégrant divers points de vue.
)"},
    {"05_unrelated_topics.txt", R"(Instructions :
1. Poursuivez le dialogue en explorant des sujets plus éloignés mais toujours liés au processus de nomination des juges.
2. Continuez de structurer le texte pour qu’il reflète un échange continu sans introductions ni conclusions.
3. Produisez cette fois des échanges plus long tout en alternant avec quelques échanges courts.
4. Maintenez un style engageant et informatif tout en explorant ces nouvelles dimensions.
)"},
}};

}  // namespace frozen
